#pragma once

// Splitting of the CPPA objective into summands whose proximal maps act on
// disjoint blocks.
//
// 1D (c = 6), 0-based sample indices:
//   J1      data term
//   J2, J3  pairs (s, s+1) with s even / odd                     weight alpha
//   J4..J6  triples (s, s+1, s+2) with s = 0, 1, 2 (mod 3)       weight beta
//
// 2D (c = 15), pixel (i, j) in row i, column j:
//   J1        data term
//   J2, J3    vertical pairs, top row i even / odd                alpha1
//   J4, J5    horizontal pairs, left column j even / odd          alpha2
//   J6..J8    vertical triples, top row i = 0, 1, 2 (mod 3)       beta1
//   J9..J11   horizontal triples, left column j = 0, 1, 2 (mod 3) beta2
//   J12..J15  2x2 cells with top-left (i, j), (i mod 2, j mod 2) =
//             (0,0), (1,0), (0,1), (1,1); block order
//             (x_ij, x_i+1j, x_ij+1, x_i+1j+1)                    gamma
//
// Every difference of the full objective belongs to exactly one summand.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "circtv/kernels.hpp"
#include "circtv/solver.hpp"

namespace circtv {

inline constexpr int kCycleLength1D = 6;
inline constexpr int kCycleLength2D = 15;

/// Flat indices of one block of a summand; `size` entries are used.
struct Block {
  std::array<std::size_t, 4> index{};
  int size = 0;
};

/// Weight multiplying J_l (1 for the data term).
double substep_weight_1d(int l, const Params1D& params);
double substep_weight_2d(int l, const Params2D& params);

/// Blocks of J_l in the order the kernels process them. For l = 1 every
/// sample is its own block.
std::vector<Block> substep_blocks_1d(int l, std::size_t n);
std::vector<Block> substep_blocks_2d(int l, std::size_t rows, std::size_t cols);

/// J_l(x), weight included.
double split_term_1d(int l, std::span<const double> x, std::span<const double> f,
                     const Params1D& params);
double split_term_2d(int l, const PhaseImage& x, const PhaseImage& f, const Params2D& params);

/// x <- prox_{lambda J_l}(x), in place.
void prox_substep_1d(int l, std::span<double> x, std::span<const double> f, double lambda,
                     const Params1D& params, const BlockKernels& kernels);
void prox_substep_2d(int l, std::span<double> x, std::span<const double> f, std::size_t rows,
                     std::size_t cols, double lambda, const Params2D& params,
                     const BlockKernels& kernels);

}  // namespace circtv
