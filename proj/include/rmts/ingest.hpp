#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rmts {

enum class FormatTag { TEST, ODI, T20 };

std::string to_string(FormatTag tag);
FormatTag format_tag_from_string(const std::string& s);

/// One team's chronologically ordered innings scores.
struct ScoreSeries {
    std::string team_id;
    FormatTag format_tag = FormatTag::ODI;
    std::vector<double> scores; // chronological, each >= 0 and finite

    std::size_t length() const noexcept { return scores.size(); }
};

struct SeriesSummary {
    double mean = 0.0;
    double std_dev = 0.0; // population (1/n)
    std::size_t length = 0;
};

/// Parse `team_id,format_tag,score` CSV. Blank lines and `#` comments are
/// skipped; a header line is detected by a non-numeric third field on the
/// first data row. Rows are grouped by (team_id, format_tag) in file order;
/// the returned collection is sorted by team_id (then format tag).
std::vector<ScoreSeries> parse_scores(std::istream& in);

/// Inverse of parse_scores, one row per innings in series order.
void write_scores(std::ostream& out, const std::vector<ScoreSeries>& series);

SeriesSummary series_summary(const ScoreSeries& series);

} // namespace rmts
