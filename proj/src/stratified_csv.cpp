#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "qparadox/app.hpp"
#include "qparadox/errors.hpp"

namespace qparadox::cli {

namespace {

std::string trim(std::string_view text) {
    const auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) return {};
    const auto end = text.find_last_not_of(" \t\r");
    return std::string(text.substr(begin, end - begin + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(trim(std::string_view(line).substr(start)));
            break;
        }
        fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

std::int64_t parse_count(const std::string& field, const char* what, std::size_t line_number) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw ParseError(std::string(what) + " must be a nonnegative integer, got '" + field + "'",
                         line_number);
    }
    return value;
}

struct Row {
    std::string stratum;
    std::string arm;
    std::int64_t successes;
    std::int64_t trials;
    std::size_t line;
};

}  // namespace

contingency::StratifiedTable parse_stratified_csv(std::istream& input) {
    std::string line;
    std::size_t line_number = 0;

    if (!std::getline(input, line)) throw ParseError("empty file: header row missing", 1);
    ++line_number;
    {
        auto header = split_fields(line);
        const std::vector<std::string> expected{"stratum", "arm", "successes", "trials"};
        if (header != expected) {
            throw ParseError("header must be 'stratum,arm,successes,trials'", line_number);
        }
    }

    std::vector<Row> rows;
    while (std::getline(input, line)) {
        ++line_number;
        if (trim(line).empty()) continue;
        auto fields = split_fields(line);
        if (fields.size() != 4) {
            throw ParseError("expected 4 fields, got " + std::to_string(fields.size()),
                             line_number);
        }
        if (fields[0].empty() || fields[1].empty()) {
            throw ParseError("stratum and arm labels must be nonempty", line_number);
        }
        rows.push_back(Row{fields[0], fields[1],
                           parse_count(fields[2], "successes", line_number),
                           parse_count(fields[3], "trials", line_number), line_number});
    }
    if (rows.empty()) throw ParseError("no data rows", line_number + 1);

    // Arm and stratum order follow first appearance in the file.
    std::vector<std::string> arms;
    for (const Row& row : rows) {
        if (std::find(arms.begin(), arms.end(), row.arm) == arms.end()) arms.push_back(row.arm);
    }
    if (arms.size() != 2) {
        throw ArityError("expected exactly two arm labels, found " + std::to_string(arms.size()));
    }

    std::vector<std::string> stratum_order;
    for (const Row& row : rows) {
        if (std::find(stratum_order.begin(), stratum_order.end(), row.stratum) ==
            stratum_order.end()) {
            stratum_order.push_back(row.stratum);
        }
    }

    std::vector<std::pair<std::string, contingency::TwoArmTable>> strata;
    for (const std::string& stratum : stratum_order) {
        std::optional<Row> row_a, row_b;
        for (const Row& row : rows) {
            if (row.stratum != stratum) continue;
            auto& slot = row.arm == arms[0] ? row_a : row_b;
            if (slot) {
                throw ParseError("duplicate row for stratum '" + stratum + "', arm '" + row.arm +
                                     "'",
                                 row.line);
            }
            slot = row;
        }
        if (!row_a || !row_b) {
            throw ArityError("stratum '" + stratum + "' lacks one of the arms");
        }
        try {
            strata.emplace_back(stratum,
                                contingency::TwoArmTable(
                                    arms[0], contingency::ArmCounts(row_a->successes, row_a->trials),
                                    arms[1], contingency::ArmCounts(row_b->successes, row_b->trials)));
        } catch (const std::invalid_argument& bad) {
            throw ParseError(bad.what(), row_a->line);
        }
    }
    return contingency::StratifiedTable(std::move(strata));
}

contingency::StratifiedTable parse_stratified_csv(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ParseError("cannot open '" + path + "'");
    return parse_stratified_csv(file);
}

}  // namespace qparadox::cli
