#ifndef RAINBOW_IO_HPP
#define RAINBOW_IO_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rainbow/core.hpp"

// File formats and reports.
//
// Family files (.rbf) are line-based 7-bit text with LF endings and no
// trailing whitespace:
//
//   rainbow-family 1
//   n <n>
//   graphs <s>
//   graph 1
//   p<j> q<k>          (one line per edge, ascending j then k)
//   end
//   ...one block per graph...
//
// Reports are self-describing "key value" lines in a fixed order; lines
// whose key starts with "time-" carry wall-clock data and are the only
// part that may differ between identical runs.

namespace rainbow::io {

struct ParseError {
    int line{0};
    int column{0};
    std::string message;
};

class ParseException : public std::exception {
  public:
    explicit ParseException(ParseError error);
    const ParseError& error() const { return error_; }
    const char* what() const noexcept override { return what_.c_str(); }

  private:
    ParseError error_;
    std::string what_;
};

/// Bit-exact .rbf rendering of a family.
std::string write_family(const BipartiteFamily& family);

/// Parses an .rbf document; throws ParseException with line/column.
BipartiteFamily parse_family(const std::string& text);

BipartiteFamily load_family_file(const std::string& path);
void save_family_file(const BipartiteFamily& family, const std::string& path);

/// FNV-1a 64-bit hash of the canonical .rbf rendering, as 16 hex digits.
std::string family_digest(const BipartiteFamily& family);

// Witness rendering: one line per edge in canonical order,
// "p<i> q<j> <color>"; cycles and paths list edges along the walk.
std::vector<std::string> witness_lines(const RainbowSubgraph& witness);

/// Ordered key-value report document.
class Report {
  public:
    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, std::uint64_t value);

    /// Text rendering: "rainbow-report 1" header then one "key value" line each.
    std::string text() const;
    /// JSON rendering: {"report": [{"key": ..., "value": ...}, ...]}.
    std::string json() const;
    /// Text rendering with time-* lines removed, for byte comparison.
    std::string deterministic_text() const;

    const std::vector<std::pair<std::string, std::string>>& fields() const { return fields_; }

  private:
    std::vector<std::pair<std::string, std::string>> fields_;
};

}  // namespace rainbow::io

#endif
