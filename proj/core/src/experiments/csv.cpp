#include <fstream>
#include <sstream>

#include "nmf/errors.hpp"
#include "nmf/experiments.hpp"
#include "nmf/text.hpp"

namespace nmf {

namespace {

std::string quote(const std::string& field) {
    if (field.find_first_of(",\"") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::vector<std::string> split_record(std::string_view line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    if (quoted) throw ParseError("line " + std::to_string(line_no) + ": unterminated quoted field");
    fields.push_back(std::move(field));
    return fields;
}

}  // namespace

std::string to_csv(const std::vector<SweepRow>& rows) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const SweepRow& r : rows) {
        out += quote(r.env) + ',' + quote(r.wrapper_family) + ',' + format_significant(r.param) + ',' +
               quote(r.agent) + ',' + std::to_string(r.seed) + ',' + format_significant(r.mean_return) + ',' +
               format_significant(r.std_return) + ',' + std::to_string(r.episodes) + ',' + quote(r.status) + ',' +
               format_significant(r.wall_ms) + '\n';
    }
    return out;
}

std::vector<SweepRow> parse_csv(std::string_view text) {
    std::vector<SweepRow> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool header_seen = false;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!header_seen) {
            if (line != kCsvHeader) {
                throw ParseError("line " + std::to_string(line_no) + ": expected header \"" +
                                 std::string(kCsvHeader) + "\"");
            }
            header_seen = true;
            continue;
        }
        if (line.empty()) continue;
        const std::vector<std::string> f = split_record(line, line_no);
        if (f.size() != 10) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 10 fields, got " +
                             std::to_string(f.size()));
        }
        try {
            SweepRow r;
            r.env = f[0];
            r.wrapper_family = f[1];
            r.param = parse_double(f[2], "param");
            r.agent = f[3];
            const long long seed = parse_integer(f[4], "seed");
            if (seed < 0) throw ParseError("seed must be non-negative");
            r.seed = static_cast<std::uint64_t>(seed);
            r.mean_return = parse_double(f[5], "mean_return");
            r.std_return = parse_double(f[6], "std_return");
            const long long episodes = parse_integer(f[7], "episodes");
            if (episodes < 0) throw ParseError("episodes must be non-negative");
            r.episodes = static_cast<std::size_t>(episodes);
            r.status = f[8];
            r.wall_ms = parse_double(f[9], "wall_ms");
            rows.push_back(std::move(r));
        } catch (const Error& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!header_seen) throw ParseError("line 1: empty CSV, expected header");
    return rows;
}

std::vector<SweepRow> read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_csv(buffer.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

}  // namespace nmf
