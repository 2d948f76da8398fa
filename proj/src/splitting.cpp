#include "circtv/splitting.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "circtv/angle.hpp"

namespace circtv {

namespace {

// Number of blocks of length `len` starting at first, first + step, ...
// that fit into n entries.
std::size_t block_count(std::size_t n, std::size_t first, std::size_t len, std::size_t step) {
  if (n < first + len) return 0;
  return (n - first - len) / step + 1;
}

void check_substep(int l, int c) {
  if (l < 1 || l > c) {
    throw std::out_of_range("substep " + std::to_string(l) + " outside 1.." + std::to_string(c));
  }
}

double penalty(double d, int p) { return p == 1 ? d : 0.5 * d * d; }

double block_term(const Block& b, std::span<const double> x, int p) {
  double delta = 0.0;
  switch (b.size) {
    case 2:
      delta = x[b.index[1]] - x[b.index[0]];
      break;
    case 3:
      delta = (x[b.index[0]] - 2.0 * x[b.index[1]]) + x[b.index[2]];
      break;
    case 4:
      delta = (x[b.index[1]] - x[b.index[0]]) + (x[b.index[2]] - x[b.index[3]]);
      break;
    default:
      throw std::logic_error("unexpected block size");
  }
  return penalty(std::abs(wrap_unchecked(delta)), p);
}

double data_term(std::span<const double> x, std::span<const double> f) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = geodesic_distance(x[i], f[i]);
    s += d * d;
  }
  return 0.5 * s;
}

// Kinds of 2D summands.
enum class Kind { data, pair_v, pair_h, triple_v, triple_h, quad };

struct Substep2D {
  Kind kind;
  std::size_t phase_i;
  std::size_t phase_j;
};

Substep2D describe_2d(int l) {
  check_substep(l, kCycleLength2D);
  if (l == 1) return {Kind::data, 0, 0};
  if (l <= 3) return {Kind::pair_v, static_cast<std::size_t>(l - 2), 0};
  if (l <= 5) return {Kind::pair_h, 0, static_cast<std::size_t>(l - 4)};
  if (l <= 8) return {Kind::triple_v, static_cast<std::size_t>(l - 6), 0};
  if (l <= 11) return {Kind::triple_h, 0, static_cast<std::size_t>(l - 9)};
  const int q = l - 12;
  return {Kind::quad, static_cast<std::size_t>(q % 2), static_cast<std::size_t>(q / 2)};
}

}  // namespace

double substep_weight_1d(int l, const Params1D& params) {
  check_substep(l, kCycleLength1D);
  if (l == 1) return 1.0;
  return l <= 3 ? params.alpha : params.beta;
}

double substep_weight_2d(int l, const Params2D& params) {
  switch (describe_2d(l).kind) {
    case Kind::data:
      return 1.0;
    case Kind::pair_v:
      return params.alpha1;
    case Kind::pair_h:
      return params.alpha2;
    case Kind::triple_v:
      return params.beta1;
    case Kind::triple_h:
      return params.beta2;
    case Kind::quad:
      return params.gamma;
  }
  return 0.0;
}

std::vector<Block> substep_blocks_1d(int l, std::size_t n) {
  check_substep(l, kCycleLength1D);
  std::vector<Block> out;
  if (l == 1) {
    for (std::size_t i = 0; i < n; ++i) out.push_back({{i, 0, 0, 0}, 1});
    return out;
  }
  if (l <= 3) {
    const std::size_t first = static_cast<std::size_t>(l - 2);
    for (std::size_t k = 0, cnt = block_count(n, first, 2, 2); k < cnt; ++k) {
      const std::size_t s = first + 2 * k;
      out.push_back({{s, s + 1, 0, 0}, 2});
    }
    return out;
  }
  const std::size_t first = static_cast<std::size_t>(l - 4);
  for (std::size_t k = 0, cnt = block_count(n, first, 3, 3); k < cnt; ++k) {
    const std::size_t s = first + 3 * k;
    out.push_back({{s, s + 1, s + 2, 0}, 3});
  }
  return out;
}

std::vector<Block> substep_blocks_2d(int l, std::size_t rows, std::size_t cols) {
  const Substep2D s = describe_2d(l);
  std::vector<Block> out;
  auto at = [cols](std::size_t i, std::size_t j) { return i * cols + j; };
  switch (s.kind) {
    case Kind::data:
      for (std::size_t i = 0; i < rows * cols; ++i) out.push_back({{i, 0, 0, 0}, 1});
      break;
    case Kind::pair_v:
      for (std::size_t r = 0, cnt = block_count(rows, s.phase_i, 2, 2); r < cnt; ++r) {
        const std::size_t i = s.phase_i + 2 * r;
        for (std::size_t j = 0; j < cols; ++j) out.push_back({{at(i, j), at(i + 1, j), 0, 0}, 2});
      }
      break;
    case Kind::pair_h:
      for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t k = 0, cnt = block_count(cols, s.phase_j, 2, 2); k < cnt; ++k) {
          const std::size_t j = s.phase_j + 2 * k;
          out.push_back({{at(i, j), at(i, j + 1), 0, 0}, 2});
        }
      }
      break;
    case Kind::triple_v:
      for (std::size_t r = 0, cnt = block_count(rows, s.phase_i, 3, 3); r < cnt; ++r) {
        const std::size_t i = s.phase_i + 3 * r;
        for (std::size_t j = 0; j < cols; ++j) {
          out.push_back({{at(i, j), at(i + 1, j), at(i + 2, j), 0}, 3});
        }
      }
      break;
    case Kind::triple_h:
      for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t k = 0, cnt = block_count(cols, s.phase_j, 3, 3); k < cnt; ++k) {
          const std::size_t j = s.phase_j + 3 * k;
          out.push_back({{at(i, j), at(i, j + 1), at(i, j + 2), 0}, 3});
        }
      }
      break;
    case Kind::quad:
      for (std::size_t r = 0, rcnt = block_count(rows, s.phase_i, 2, 2); r < rcnt; ++r) {
        const std::size_t i = s.phase_i + 2 * r;
        for (std::size_t k = 0, cnt = block_count(cols, s.phase_j, 2, 2); k < cnt; ++k) {
          const std::size_t j = s.phase_j + 2 * k;
          out.push_back({{at(i, j), at(i + 1, j), at(i, j + 1), at(i + 1, j + 1)}, 4});
        }
      }
      break;
  }
  return out;
}

double split_term_1d(int l, std::span<const double> x, std::span<const double> f,
                     const Params1D& params) {
  if (x.size() != f.size()) throw std::invalid_argument("split_term_1d: length mismatch");
  if (l == 1) return data_term(x, f);
  const double weight = substep_weight_1d(l, params);
  double s = 0.0;
  for (const Block& b : substep_blocks_1d(l, x.size())) s += block_term(b, x, params.p);
  return weight * s;
}

double split_term_2d(int l, const PhaseImage& x, const PhaseImage& f, const Params2D& params) {
  if (x.rows() != f.rows() || x.cols() != f.cols()) {
    throw std::invalid_argument("split_term_2d: dimension mismatch");
  }
  if (l == 1) return data_term(x.pixels(), f.pixels());
  const double weight = substep_weight_2d(l, params);
  double s = 0.0;
  for (const Block& b : substep_blocks_2d(l, x.rows(), x.cols())) {
    s += block_term(b, x.pixels(), params.p);
  }
  return weight * s;
}

void prox_substep_1d(int l, std::span<double> x, std::span<const double> f, double lambda,
                     const Params1D& params, const BlockKernels& kernels) {
  check_substep(l, kCycleLength1D);
  const std::size_t n = x.size();
  double* px = x.data();
  if (l == 1) {
    kernels.data_fidelity(px, f.data(), n, lambda);
    return;
  }
  const double weight = substep_weight_1d(l, params);
  if (weight == 0.0) return;
  const double lam = lambda * weight;
  if (l <= 3) {
    const std::size_t first = static_cast<std::size_t>(l - 2);
    const std::size_t cnt = block_count(n, first, 2, 2);
    if (cnt > 0) kernels.pair(px + first, px + first + 1, cnt, 2, lam, params.p);
    return;
  }
  const std::size_t first = static_cast<std::size_t>(l - 4);
  const std::size_t cnt = block_count(n, first, 3, 3);
  if (cnt > 0) kernels.triple(px + first, px + first + 1, px + first + 2, cnt, 3, lam, params.p);
}

void prox_substep_2d(int l, std::span<double> x, std::span<const double> f, std::size_t rows,
                     std::size_t cols, double lambda, const Params2D& params,
                     const BlockKernels& kernels) {
  const Substep2D s = describe_2d(l);
  if (x.size() != rows * cols || f.size() != rows * cols) {
    throw std::invalid_argument("prox_substep_2d: dimension mismatch");
  }
  double* px = x.data();
  if (s.kind == Kind::data) {
    kernels.data_fidelity(px, f.data(), rows * cols, lambda);
    return;
  }
  const double weight = substep_weight_2d(l, params);
  if (weight == 0.0) return;
  const double lam = lambda * weight;
  const int p = params.p;
  auto row = [px, cols](std::size_t i) { return px + i * cols; };

  switch (s.kind) {
    case Kind::pair_v: {
      const auto cnt = static_cast<std::ptrdiff_t>(block_count(rows, s.phase_i, 2, 2));
#pragma omp parallel for schedule(static) if (cnt * static_cast<std::ptrdiff_t>(cols) > 65536)
      for (std::ptrdiff_t r = 0; r < cnt; ++r) {
        const std::size_t i = s.phase_i + 2 * static_cast<std::size_t>(r);
        kernels.pair(row(i), row(i + 1), cols, 1, lam, p);
      }
      break;
    }
    case Kind::pair_h: {
      const std::size_t cnt = block_count(cols, s.phase_j, 2, 2);
      if (cnt == 0) break;
      const auto nrows = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(static) if (nrows * static_cast<std::ptrdiff_t>(cols) > 65536)
      for (std::ptrdiff_t i = 0; i < nrows; ++i) {
        double* base = row(static_cast<std::size_t>(i)) + s.phase_j;
        kernels.pair(base, base + 1, cnt, 2, lam, p);
      }
      break;
    }
    case Kind::triple_v: {
      const auto cnt = static_cast<std::ptrdiff_t>(block_count(rows, s.phase_i, 3, 3));
#pragma omp parallel for schedule(static) if (cnt * static_cast<std::ptrdiff_t>(cols) > 65536)
      for (std::ptrdiff_t r = 0; r < cnt; ++r) {
        const std::size_t i = s.phase_i + 3 * static_cast<std::size_t>(r);
        kernels.triple(row(i), row(i + 1), row(i + 2), cols, 1, lam, p);
      }
      break;
    }
    case Kind::triple_h: {
      const std::size_t cnt = block_count(cols, s.phase_j, 3, 3);
      if (cnt == 0) break;
      const auto nrows = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(static) if (nrows * static_cast<std::ptrdiff_t>(cols) > 65536)
      for (std::ptrdiff_t i = 0; i < nrows; ++i) {
        double* base = row(static_cast<std::size_t>(i)) + s.phase_j;
        kernels.triple(base, base + 1, base + 2, cnt, 3, lam, p);
      }
      break;
    }
    case Kind::quad: {
      const std::size_t cnt = block_count(cols, s.phase_j, 2, 2);
      const auto rcnt = static_cast<std::ptrdiff_t>(block_count(rows, s.phase_i, 2, 2));
      if (cnt == 0) break;
#pragma omp parallel for schedule(static) if (rcnt * static_cast<std::ptrdiff_t>(cols) > 65536)
      for (std::ptrdiff_t r = 0; r < rcnt; ++r) {
        const std::size_t i = s.phase_i + 2 * static_cast<std::size_t>(r);
        double* top = row(i) + s.phase_j;
        double* bottom = row(i + 1) + s.phase_j;
        kernels.quad(top, bottom, top + 1, bottom + 1, cnt, 2, lam, p);
      }
      break;
    }
    case Kind::data:
      break;
  }
}

}  // namespace circtv
