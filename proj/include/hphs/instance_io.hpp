#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hphs/geom.hpp"
#include "hphs/solver.hpp"

namespace hphs {

struct Instance {
  std::vector<WeightedPoint> points;
  std::vector<HalfPlane> halfplanes;
};

/// Malformed instance text. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Text format, '#' starts a comment and blank lines are ignored:
///   points <n>
///   <id> <x> <y> <w>        (n records)
///   halfplanes <m>
///   <id> <a> <b> <c>        (m records, meaning a*x + b*y >= c)
/// Ids must be 0..n-1 and 0..m-1 in some order.
Instance parse_instance(std::istream& in);
Instance parse_instance_string(const std::string& text);

/// Throws std::runtime_error if the file cannot be opened.
Instance read_instance_file(const std::string& path);

/// Canonical form: no comments, one space between fields, records in input order.
std::string format_instance(const Instance& instance);

/// Keys status, total_weight, points, kappa, engine, millis.
std::string solution_json(const Solution& solution, double millis);

/// The "points" array of a solution JSON document.
std::vector<int> parse_solution_points(const std::string& json_text);

}  // namespace hphs
