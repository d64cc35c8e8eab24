#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eqrank {

// Dense vertex index. Stable across all snapshots of one corpus.
using VertexId = std::uint32_t;
using ClusterId = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr ClusterId kNoCluster = std::numeric_limits<ClusterId>::max();

// Calendar month. Snapshot cutoffs are inclusive: a cutoff of 1993-12
// contains every paper dated up to and including December 1993.
struct YearMonth {
  int year = 0;
  int month = 1;

  auto operator<=>(const YearMonth&) const = default;

  // Parses "YYYY-MM". Returns nullopt on any deviation from that shape.
  static std::optional<YearMonth> parse(std::string_view text);
  std::string to_string() const;
  // Months since year 0; used for spacing generated dates.
  int ordinal() const { return year * 12 + (month - 1); }
  static YearMonth from_ordinal(int ordinal);
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : std::runtime_error(source + (line ? ":" + std::to_string(line) : std::string()) +
                           ": " + what),
        source_(source),
        line_(line) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

class EmptySnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a TMC(cut) computation has no paper above the cut.
class NoEligiblePapersError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eqrank
