#include "rainbow/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace rainbow::io {

ParseException::ParseException(ParseError error) : error_(std::move(error)) {
    what_ = "parse error at line " + std::to_string(error_.line) + ", column " +
            std::to_string(error_.column) + ": " + error_.message;
}

std::string write_family(const BipartiteFamily& family) {
    std::string out;
    out += "rainbow-family 1\n";
    out += "n " + std::to_string(family.n()) + "\n";
    out += "graphs " + std::to_string(family.graph_count()) + "\n";
    for (int g = 1; g <= family.graph_count(); ++g) {
        out += "graph " + std::to_string(g) + "\n";
        for (const Edge& e : family.edges(g))
            out += "p" + std::to_string(e.blue) + " q" + std::to_string(e.red) + "\n";
        out += "end\n";
    }
    return out;
}

namespace {

[[noreturn]] void fail(int line, int column, const std::string& message) {
    throw ParseException({line, column, message});
}

// Splits into lines, rejecting non-LF endings and trailing whitespace.
std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string current;
    int line_no = 1;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(current);
            current.clear();
            ++line_no;
        } else if (c == '\r') {
            fail(line_no, static_cast<int>(current.size()) + 1, "carriage return not allowed");
        } else {
            current += c;
        }
    }
    if (!current.empty()) lines.push_back(current);  // tolerate a missing final newline
    return lines;
}

int parse_int(const std::string& token, int line, int column, const std::string& what) {
    if (token.empty()) fail(line, column, "expected " + what);
    for (char c : token)
        if (c < '0' || c > '9') fail(line, column, what + " must be a nonnegative integer");
    try {
        return std::stoi(token);
    } catch (const std::exception&) {
        fail(line, column, what + " out of range");
    }
}

}  // namespace

BipartiteFamily parse_family(const std::string& text) {
    auto lines = split_lines(text);
    std::size_t i = 0;
    auto next_line = [&](const std::string& expectation) -> const std::string& {
        if (i >= lines.size()) fail(static_cast<int>(lines.size()) + 1, 1, "unexpected end of file, expected " + expectation);
        return lines[i++];
    };

    if (next_line("header") != "rainbow-family 1") fail(1, 1, "expected 'rainbow-family 1'");
    const std::string n_line = next_line("n <n>");
    if (n_line.rfind("n ", 0) != 0) fail(2, 1, "expected 'n <n>'");
    int n = parse_int(n_line.substr(2), 2, 3, "n");
    if (n < 1 || n > 64) fail(2, 3, "n must be in [1, 64]");
    const std::string s_line = next_line("graphs <s>");
    if (s_line.rfind("graphs ", 0) != 0) fail(3, 1, "expected 'graphs <s>'");
    int s = parse_int(s_line.substr(7), 3, 8, "graph count");

    std::vector<std::vector<Edge>> graphs;
    for (int g = 1; g <= s; ++g) {
        int header_line = static_cast<int>(i) + 1;
        const std::string& head = next_line("'graph " + std::to_string(g) + "'");
        if (head != "graph " + std::to_string(g))
            fail(header_line, 1, "expected 'graph " + std::to_string(g) + "'");
        std::vector<Edge> edges;
        while (true) {
            int edge_line = static_cast<int>(i) + 1;
            const std::string& l = next_line("edge or 'end'");
            if (l == "end") break;
            if (l.empty() || l[0] != 'p') fail(edge_line, 1, "expected 'p<j> q<k>' or 'end'");
            auto space = l.find(' ');
            if (space == std::string::npos || space + 1 >= l.size() || l[space + 1] != 'q')
                fail(edge_line, static_cast<int>(space == std::string::npos ? l.size() : space) + 1,
                     "expected 'p<j> q<k>'");
            int b = parse_int(l.substr(1, space - 1), edge_line, 2, "blue index");
            int r = parse_int(l.substr(space + 2), edge_line, static_cast<int>(space) + 3,
                              "red index");
            edges.push_back({b, r});
        }
        graphs.push_back(std::move(edges));
    }
    if (i != lines.size()) fail(static_cast<int>(i) + 1, 1, "trailing content after last graph");

    BipartiteFamily family(n, std::move(graphs));
    if (!family.structurally_sound())
        fail(1, 1, "structural error: " + family.structural_errors().front());
    return family;
}

BipartiteFamily load_family_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseException({0, 0, "cannot open file: " + path});
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_family(buffer.str());
}

void save_family_file(const BipartiteFamily& family, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << write_family(family);
}

std::string family_digest(const BipartiteFamily& family) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (char c : write_family(family)) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001b3ULL;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hex[hash & 0xf];
        hash >>= 4;
    }
    return out;
}

std::vector<std::string> witness_lines(const RainbowSubgraph& witness) {
    std::vector<std::string> out;
    for (const ColoredEdge& ce : canonicalize(witness).edges) {
        out.push_back("p" + std::to_string(ce.edge.blue) + " q" + std::to_string(ce.edge.red) +
                      " " + std::to_string(ce.color));
    }
    return out;
}

void Report::add(const std::string& key, const std::string& value) {
    fields_.emplace_back(key, value);
}

void Report::add(const std::string& key, std::uint64_t value) {
    fields_.emplace_back(key, std::to_string(value));
}

std::string Report::text() const {
    std::string out = "rainbow-report 1\n";
    for (const auto& [key, value] : fields_) out += key + " " + value + "\n";
    return out;
}

std::string Report::json() const {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [key, value] : fields_)
        entries.push_back({{"key", key}, {"value", value}});
    nlohmann::json doc;
    doc["report"] = entries;
    return doc.dump(2) + "\n";
}

std::string Report::deterministic_text() const {
    std::string out = "rainbow-report 1\n";
    for (const auto& [key, value] : fields_) {
        if (key.rfind("time-", 0) == 0) continue;
        out += key + " " + value + "\n";
    }
    return out;
}

}  // namespace rainbow::io
