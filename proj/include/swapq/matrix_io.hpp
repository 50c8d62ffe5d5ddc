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

// Plain-text complex matrices:
//
//   # comment lines start with '#'
//   4
//   0.5,0 0,0 0,0 0.5,0
//   ...
//
// The first non-comment line holds the dimension n; each of the next n lines
// holds n "re,im" entries separated by whitespace.

#ifndef SWAPQ_MATRIX_IO_HPP
#define SWAPQ_MATRIX_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "swapq/linops.hpp"

namespace swapq {

class MatrixFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ComplexMatrix read_matrix(std::istream& in);
ComplexMatrix read_matrix_file(const std::string& path);

/// Writes with 17 significant digits, enough to round-trip every double.
void write_matrix(std::ostream& out, const ComplexMatrix& m);

}  // namespace swapq

#endif  // SWAPQ_MATRIX_IO_HPP
