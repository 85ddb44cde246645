#include "rmts/ingest.hpp"

#include "rmts/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace rmts {

std::string to_string(FormatTag tag) {
    switch (tag) {
    case FormatTag::TEST: return "TEST";
    case FormatTag::ODI: return "ODI";
    case FormatTag::T20: return "T20";
    }
    return "?";
}

FormatTag format_tag_from_string(const std::string& s) {
    std::string up;
    up.reserve(s.size());
    for (char c : s) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    if (up == "TEST") return FormatTag::TEST;
    if (up == "ODI") return FormatTag::ODI;
    if (up == "T20") return FormatTag::T20;
    throw ValidationError("unknown format tag: " + s);
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
    const std::string t = trim(s);
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size();
}

} // namespace

std::vector<ScoreSeries> parse_scores(std::istream& in) {
    std::map<std::pair<std::string, int>, ScoreSeries> groups;
    std::string line;
    std::size_t lineno = 0;
    bool seen_data = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string row = trim(line);
        if (row.empty() || row[0] == '#') continue;

        std::vector<std::string> fields;
        std::stringstream ss(row);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(trim(field));
        if (!row.empty() && row.back() == ',') fields.push_back("");
        if (fields.size() != 3)
            throw ParseError("expected 3 fields, got " + std::to_string(fields.size()), lineno);

        double score;
        if (!parse_double(fields[2], score)) {
            // Header row: first data-position line with a non-numeric score field.
            if (!seen_data) continue;
            throw ParseError("non-numeric score '" + fields[2] + "'", lineno);
        }
        seen_data = true;
        if (!std::isfinite(score) || score < 0.0)
            throw ValidationError("team " + fields[0] + ", line " + std::to_string(lineno) +
                                  ": score must be finite and non-negative");

        FormatTag tag;
        try {
            tag = format_tag_from_string(fields[1]);
        } catch (const ValidationError&) {
            throw ParseError("bad format tag '" + fields[1] + "'", lineno);
        }

        auto key = std::make_pair(fields[0], static_cast<int>(tag));
        auto it = groups.find(key);
        if (it == groups.end()) {
            ScoreSeries s;
            s.team_id = fields[0];
            s.format_tag = tag;
            it = groups.emplace(key, std::move(s)).first;
        }
        it->second.scores.push_back(score);
    }
    std::vector<ScoreSeries> out;
    out.reserve(groups.size());
    for (auto& [k, v] : groups) out.push_back(std::move(v));
    return out; // std::map ordering: sorted by team_id, then tag
}

void write_scores(std::ostream& out, const std::vector<ScoreSeries>& series) {
    char buf[64];
    for (const auto& s : series) {
        for (double x : s.scores) {
            std::snprintf(buf, sizeof(buf), "%.17g", x);
            out << s.team_id << ',' << to_string(s.format_tag) << ',' << buf << '\n';
        }
    }
}

SeriesSummary series_summary(const ScoreSeries& series) {
    const auto n = series.scores.size();
    if (n == 0) throw ContractViolation("series_summary: empty series");
    const double mean =
        std::accumulate(series.scores.begin(), series.scores.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double x : series.scores) {
        const double d = x - mean;
        ss += d * d;
    }
    return {mean, std::sqrt(ss / static_cast<double>(n)), n};
}

} // namespace rmts
