#include "latinpat/io.hpp"

#include "latinpat/error.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace latinpat {

namespace {

// Reads the next line that is neither blank nor a '#' comment.
bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

int to_int(const std::string& token) {
  int value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) throw Error(Errc::Parse, "expected an integer, got '" + token + "'");
  return value;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Parse, "cannot open '" + path + "'");
  return in;
}

}  // namespace

LatinSquare read_square(std::istream& in) {
  std::string line;
  if (!next_data_line(in, line)) throw Error(Errc::Parse, "missing order line");
  auto head = tokens(line);
  if (head.size() != 1) throw Error(Errc::Parse, "order line must hold a single integer");
  const int n = to_int(head[0]);
  if (n < 1) throw Error(Errc::Parse, "order must be positive");
  std::vector<std::vector<int>> grid;
  for (int r = 0; r < n; ++r) {
    if (!next_data_line(in, line)) throw Error(Errc::Parse, "expected " + std::to_string(n) + " rows");
    std::vector<int> row;
    for (const auto& t : tokens(line)) row.push_back(to_int(t));
    grid.push_back(std::move(row));
  }
  if (next_data_line(in, line)) throw Error(Errc::Parse, "trailing data after row " + std::to_string(n));
  return validate_latin(grid);
}

LatinSquare read_square_file(const std::string& path) {
  auto in = open(path);
  return read_square(in);
}

void write_square(std::ostream& out, const LatinSquare& square) {
  out << square.order() << '\n';
  for (int r = 0; r < square.order(); ++r) {
    for (int c = 0; c < square.order(); ++c) {
      if (c) out << ' ';
      out << square.at(r, c);
    }
    out << '\n';
  }
}

GeneralizedPattern read_pattern(std::istream& in) {
  std::string line;
  if (!next_data_line(in, line)) throw Error(Errc::Parse, "missing dimension line");
  auto head = tokens(line);
  if (head.size() != 2) throw Error(Errc::Parse, "dimension line must be 'k l'");
  const int k = to_int(head[0]);
  const int l = to_int(head[1]);
  if (k < 1 || l < 1) throw Error(Errc::Parse, "pattern dimensions must be positive");
  std::vector<int> entries;
  for (int r = 0; r < k; ++r) {
    if (!next_data_line(in, line)) throw Error(Errc::Parse, "expected " + std::to_string(k) + " pattern rows");
    auto row = tokens(line);
    if (static_cast<int>(row.size()) != l) {
      throw Error(Errc::Parse, "pattern row " + std::to_string(r + 1) + " needs " + std::to_string(l) + " tokens");
    }
    for (const auto& t : row) entries.push_back(t == "*" ? GeneralizedPattern::kHole : to_int(t));
  }
  if (next_data_line(in, line)) throw Error(Errc::Parse, "trailing data after pattern");
  try {
    return GeneralizedPattern::from_entries(k, l, std::move(entries));
  } catch (const Error& e) {
    throw Error(Errc::Parse, e.what());
  }
}

GeneralizedPattern read_pattern_file(const std::string& path) {
  auto in = open(path);
  return read_pattern(in);
}

void write_pattern(std::ostream& out, const GeneralizedPattern& pattern) {
  out << pattern.rows() << ' ' << pattern.cols() << '\n';
  for (int r = 0; r < pattern.rows(); ++r) {
    for (int c = 0; c < pattern.cols(); ++c) {
      if (c) out << ' ';
      if (pattern.is_hole(r, c)) {
        out << '*';
      } else {
        out << pattern.at(r, c);
      }
    }
    out << '\n';
  }
}

}  // namespace latinpat
