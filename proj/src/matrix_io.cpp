// Copyright 2026 The swapq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "swapq/matrix_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

namespace swapq {
namespace {

constexpr std::size_t kMaxDimension = 1024;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Reads the next line that is neither blank nor a comment.
bool next_content_line(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    line = std::string(t);
    return true;
  }
  return false;
}

[[noreturn]] void fail(int line_no, const std::string& what) {
  throw MatrixFormatError("line " + std::to_string(line_no) + ": " + what);
}

double parse_double(std::string_view s, int line_no) {
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (!s.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) fail(line_no, "bad number '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split_whitespace(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

}  // namespace

ComplexMatrix read_matrix(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!next_content_line(in, line, line_no)) throw MatrixFormatError("empty matrix file");
  std::size_t n = 0;
  {
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), n);
    if (ec != std::errc() || ptr != line.data() + line.size() || n == 0 || n > kMaxDimension)
      fail(line_no, "expected a positive dimension, got '" + line + "'");
  }
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!next_content_line(in, line, line_no))
      throw MatrixFormatError("expected " + std::to_string(n) + " rows, got " + std::to_string(r));
    const auto fields = split_whitespace(line);
    if (fields.size() != n)
      fail(line_no, "expected " + std::to_string(n) + " entries, got " +
                        std::to_string(fields.size()));
    for (std::size_t c = 0; c < n; ++c) {
      const auto comma = fields[c].find(',');
      if (comma == std::string_view::npos)
        fail(line_no, "entry '" + std::string(fields[c]) + "' is not a re,im pair");
      m(r, c) = cplx(parse_double(fields[c].substr(0, comma), line_no),
                     parse_double(fields[c].substr(comma + 1), line_no));
    }
  }
  if (next_content_line(in, line, line_no)) fail(line_no, "unexpected trailing content");
  return m;
}

ComplexMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MatrixFormatError("cannot open '" + path + "'");
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const ComplexMatrix& m) {
  if (!m.is_square()) throw LinalgError("write_matrix: matrix is not square");
  out << m.rows() << '\n';
  std::array<char, 64> buf{};
  auto put = [&](double v) {
    const auto [ptr, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    out.write(buf.data(), ptr - buf.data());
  };
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out << ' ';
      put(m(r, c).real());
      out << ',';
      put(m(r, c).imag());
    }
    out << '\n';
  }
}

}  // namespace swapq
