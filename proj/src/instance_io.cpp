#include "hphs/instance_io.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <string_view>

#include <json.hpp>

namespace hphs {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string_view text;
  int column = 1;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  // Next non-empty line split into tokens; false at end of input.
  bool next(std::vector<Token>& tokens) {
    while (std::getline(in_, text_)) {
      ++line_;
      tokens.clear();
      const std::size_t hash = text_.find('#');
      const std::size_t end = hash == std::string::npos ? text_.size() : hash;
      std::size_t k = 0;
      while (k < end) {
        while (k < end && is_space(text_[k])) ++k;
        const std::size_t start = k;
        while (k < end && !is_space(text_[k])) ++k;
        if (k > start) tokens.push_back({std::string_view(text_).substr(start, k - start), static_cast<int>(start) + 1});
      }
      if (!tokens.empty()) return true;
    }
    return false;
  }

  int line() const { return line_; }
  int end_column() const { return static_cast<int>(text_.size()) + 1; }

 private:
  static bool is_space(char ch) { return ch == ' ' || ch == '\t' || ch == '\r'; }

  std::istream& in_;
  std::string text_;
  int line_ = 0;
};

std::int64_t integer(const Token& t, int line, std::int64_t lo, std::int64_t hi, const char* field) {
  std::int64_t v = 0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec == std::errc::result_out_of_range) {
    throw ParseError(line, t.column, std::string(field) + " out of range");
  }
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, t.column, std::string("expected integer ") + field + ", got '" + std::string(t.text) + "'");
  }
  if (v < lo || v > hi) throw ParseError(line, t.column, std::string(field) + " out of range");
  return v;
}

int header(Reader& reader, std::vector<Token>& tokens, const char* keyword) {
  if (!reader.next(tokens)) {
    throw ParseError(reader.line() + 1, 1, std::string("missing '") + keyword + " <count>' header");
  }
  if (tokens[0].text != keyword) {
    throw ParseError(reader.line(), tokens[0].column, std::string("expected '") + keyword + "', got '" +
                                                          std::string(tokens[0].text) + "'");
  }
  if (tokens.size() != 2) {
    throw ParseError(reader.line(), tokens.size() < 2 ? reader.end_column() : tokens[2].column,
                     std::string("expected '") + keyword + " <count>'");
  }
  return static_cast<int>(integer(tokens[1], reader.line(), 0, 10'000'000, "count"));
}

void record(Reader& reader, std::vector<Token>& tokens, const char* what, int count) {
  if (!reader.next(tokens)) {
    throw ParseError(reader.line() + 1, 1, std::string("expected ") + std::to_string(count) + " " + what + " records");
  }
  if (tokens.size() != 4) {
    throw ParseError(reader.line(), tokens.size() < 4 ? reader.end_column() : tokens[4].column,
                     std::string(what) + " record needs exactly 4 fields");
  }
}

int record_id(const Token& t, int line, int count, std::vector<char>& seen, const char* what) {
  const int id = static_cast<int>(integer(t, line, 0, count - 1, "id"));
  if (seen[static_cast<std::size_t>(id)]) {
    throw ParseError(line, t.column, std::string("duplicate ") + what + " id " + std::to_string(id));
  }
  seen[static_cast<std::size_t>(id)] = 1;
  return id;
}

}  // namespace

Instance parse_instance(std::istream& in) {
  Reader reader(in);
  std::vector<Token> tokens;
  Instance out;

  const int n = header(reader, tokens, "points");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int k = 0; k < n; ++k) {
    record(reader, tokens, "point", n);
    const int line = reader.line();
    WeightedPoint p;
    p.id = record_id(tokens[0], line, n, seen, "point");
    p.x = integer(tokens[1], line, -kCoordBound, kCoordBound, "x");
    p.y = integer(tokens[2], line, -kCoordBound, kCoordBound, "y");
    p.w = integer(tokens[3], line, INT64_MIN, kWeightBound, "weight");
    if (p.w < 1) throw ParseError(line, tokens[3].column, "weight must be positive");
    out.points.push_back(p);
  }

  const int m = header(reader, tokens, "halfplanes");
  seen.assign(static_cast<std::size_t>(m), 0);
  for (int k = 0; k < m; ++k) {
    record(reader, tokens, "half-plane", m);
    const int line = reader.line();
    HalfPlane h;
    h.id = record_id(tokens[0], line, m, seen, "half-plane");
    h.a = integer(tokens[1], line, -kCoordBound, kCoordBound, "a");
    h.b = integer(tokens[2], line, -kCoordBound, kCoordBound, "b");
    h.c = integer(tokens[3], line, -kOffsetBound, kOffsetBound, "c");
    if (h.a == 0 && h.b == 0) throw ParseError(line, tokens[1].column, "zero normal");
    out.halfplanes.push_back(h);
  }

  if (reader.next(tokens)) {
    throw ParseError(reader.line(), tokens[0].column, "unexpected content after the last half-plane");
  }
  return out;
}

Instance parse_instance_string(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_instance(in);
}

std::string format_instance(const Instance& instance) {
  std::ostringstream out;
  out << "points " << instance.points.size() << '\n';
  for (const auto& p : instance.points) out << p.id << ' ' << p.x << ' ' << p.y << ' ' << p.w << '\n';
  out << "halfplanes " << instance.halfplanes.size() << '\n';
  for (const auto& h : instance.halfplanes) out << h.id << ' ' << h.a << ' ' << h.b << ' ' << h.c << '\n';
  return out.str();
}

std::string solution_json(const Solution& solution, double millis) {
  nlohmann::ordered_json j;
  j["status"] = "optimal";
  j["total_weight"] = solution.total_weight;
  j["points"] = solution.point_ids;
  j["kappa"] = solution.kappa;
  j["engine"] = to_string(solution.engine);
  j["millis"] = millis;
  if (!solution.per_candidate.empty()) {
    auto& rows = j["candidates"];
    rows = nlohmann::ordered_json::array();
    for (const auto& c : solution.per_candidate) {
      nlohmann::ordered_json row;
      row["arc"] = c.arc_index;
      row["point"] = c.point_id;
      row["arc_weight"] = c.arc_weight;
      if (c.value.is_finite()) {
        row["w_alpha"] = c.value.value();
      } else {
        row["w_alpha"] = nullptr;
      }
      rows.push_back(row);
    }
  }
  return j.dump();
}

std::vector<int> parse_solution_points(const std::string& json_text) {
  const auto j = nlohmann::json::parse(json_text);
  if (!j.contains("points") || !j["points"].is_array()) {
    throw std::runtime_error("solution JSON has no \"points\" array");
  }
  return j["points"].get<std::vector<int>>();
}

}  // namespace hphs
