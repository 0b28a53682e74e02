// Copyright 2026 The fplab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The spiral hard instance K^n(z).
//
// K^2(z) = [[z+2, z+3], [z+1, 0]]. For n >= 4 the outer layer holds z+1 at
// (n,1), z+2 at (1,1), z+3 at (1,n), z+4 at (n-1,n) and zeros elsewhere, and
// the central (n-2)x(n-2) block is K^{n-2}(z+4). Read in ascending order the
// nonzero cells trace a spiral from the lower-left corner to the maximum at
// (n/2, n/2+1), and consecutive cells share a row or a column alternately.

#ifndef FPLAB_CONSTRUCTION_H_
#define FPLAB_CONSTRUCTION_H_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fplab/exact.h"
#include "fplab/game.h"

namespace fplab {

struct ConstructionParams {
  std::size_t n = 2;  // even, >= 2
  Integer z = 0;      // >= 0

  // Throws ConstructionError.
  void Validate() const;
};

// Literal recursion. Throws ConstructionError on odd or zero n, or z < 0.
PayoffMatrix BuildK(const ConstructionParams& params);

// Direct per-layer rule: for layer i in [0, n/2), with v = z + 4i,
//   (i+1, i+1) = v+2, (n-i, i+1) = v+1, (i+1, n-i) = v+3,
//   (n-i-1, n-i) = v+4 unless layer i is the innermost one.
// Must agree with BuildK bit for bit.
PayoffMatrix BuildKClosedForm(const ConstructionParams& params);

struct CellValue {
  Profile cell;
  Integer value;

  friend bool operator==(const CellValue&, const CellValue&) = default;
};

struct StructureReport {
  std::size_t n = 0;
  Integer z = 0;  // inferred offset: minimum nonzero value minus one
  // Nonzero cells per row / column, 1-based, in increasing column / row order.
  std::vector<std::vector<CellValue>> row_nonzeros;
  std::vector<std::vector<CellValue>> col_nonzeros;
  Profile max_cell;
  Integer max_value = 0;
  std::vector<Integer> nonzero_values;  // sorted ascending
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Structural audit of a candidate K^n(z). Never throws on a malformed matrix;
// every failed check is reported as a named violation. The offset z is taken
// as (smallest nonzero value - 1), so K^n(z) passes for every z >= 0.
StructureReport ValidateStructure(const PayoffMatrix& a);

// Nonzero cells in ascending value order. Throws StructureError if the matrix
// fails ValidateStructure.
std::vector<CellValue> SpiralOrder(const PayoffMatrix& a);

}  // namespace fplab

#endif  // FPLAB_CONSTRUCTION_H_
