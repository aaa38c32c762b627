#pragma once

// Exact ranks. Sparse integer matrices are stored by columns; since column
// scaling does not change rank or column space, callers may clear
// denominators column by column.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "weylprop/rational.hpp"

namespace weylprop {

using SparseColumn = std::vector<std::pair<std::uint32_t, std::int64_t>>;  // (row, entry), rows increasing

struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<SparseColumn> columns;
  std::size_t nonzeros() const;
};

/// Dense rational matrix, row-major.
struct RationalMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Scalar> entries;

  RationalMatrix() = default;
  RationalMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}
  Scalar& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
};

/// Fraction-free (Bareiss) elimination after clearing each row's denominators.
std::size_t rank(const RationalMatrix& m);

/// Removes singleton rows and columns (each one pivot) until none remain.
/// Works on the nonzero pattern only, so it is valid over every field.
struct PeeledMatrix {
  std::size_t rank = 0;     // pivots taken while peeling
  SparseMatrix remainder;   // surviving columns restricted to surviving rows
};
PeeledMatrix peel(const SparseMatrix& m);

/// Exact rank over Q: peeling, then fraction-free column elimination over Z.
std::size_t rank(const SparseMatrix& m);

/// Rank of the reduction modulo a prime below 2^32. It never exceeds the
/// rank over Q.
std::size_t rank_mod(const SparseMatrix& m, std::uint32_t prime);

/// Whether b (entries given exactly) lies in the column space of m.
bool in_column_space(const SparseMatrix& m, const std::vector<std::pair<std::uint32_t, Scalar>>& b);

/// m2 * m1 == 0 exactly (m1 columns fed through m2). Entries accumulate in 128 bits.
bool product_is_zero(const SparseMatrix& m2, const SparseMatrix& m1);

}  // namespace weylprop
