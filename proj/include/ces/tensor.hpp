#pragma once

// Multi-index algebra over C^{d_1} (x) ... (x) C^{d_k} and dense operators on it.
//
// Basis vectors e_i are addressed by their lexicographic rank with slot 0 the
// most significant digit. Slots are 0-based throughout the library.

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ces {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

/// Thrown on any violated precondition of a library call.
class Error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr long kMaxDimension = 4096;
inline constexpr double kUnitTol = 1e-10;
inline constexpr double kHermitianTol = 1e-10;

/// Local dimensions (d_1, ..., d_k) of a multipartite system.
class Dims {
 public:
  explicit Dims(std::vector<int> extents);

  int k() const { return static_cast<int>(extents_.size()); }
  int operator[](int slot) const { return extents_[slot]; }
  std::span<const int> extents() const { return extents_; }

  /// Highest level, sum of (d_j - 1).
  int N() const { return top_level_; }
  /// Total dimension, product of d_j.
  long D() const { return total_; }
  /// Maximal completely entangled dimension D - sum d_j + k - 1.
  long M() const;

  /// Stride of a slot in the lexicographic rank.
  long stride(int slot) const { return strides_[slot]; }
  long rank_of(std::span<const int> digits) const;
  std::vector<int> digits_of(long rank) const;
  int digit(long rank, int slot) const { return static_cast<int>((rank / strides_[slot]) % extents_[slot]); }
  int level_of(long rank) const;

  void check_slot(int slot) const;
  std::string to_string() const;

  bool operator==(const Dims& other) const { return extents_ == other.extents_; }

 private:
  std::vector<int> extents_;
  std::vector<long> strides_;
  long total_ = 1;
  int top_level_ = 0;
};

struct MultiIndex {
  std::vector<int> digits;
  int level = 0;
  long rank = 0;
};

/// All multi-indices in increasing lexicographic order.
std::vector<MultiIndex> enumerate_indices(const Dims& dims);

/// Ranks grouped by level: entry n lists I_n in lexicographic order.
std::vector<std::vector<long>> level_sets(const Dims& dims);

/// |I_n| for n = 0..N, computed as polynomial coefficients of prod_r (1 + x + ... + x^{d_r - 1}).
std::vector<long> level_sizes(const Dims& dims);

class Ket {
 public:
  Ket(Dims dims, Vec amplitudes);
  static Ket zero(const Dims& dims);
  static Ket basis(const Dims& dims, long rank);

  const Dims& dims() const { return dims_; }
  const Vec& amplitudes() const { return amps_; }
  Vec& amplitudes() { return amps_; }
  cplx operator[](long rank) const { return amps_[rank]; }
  cplx& operator[](long rank) { return amps_[rank]; }

  double norm() const { return amps_.norm(); }
  bool is_unit() const;
  Ket normalized() const;
  /// <this|other>
  cplx inner(const Ket& other) const;

 private:
  Dims dims_;
  Vec amps_;
};

/// Dense D x D operator. The Hermitian flag is evaluated once at construction.
class HermOp {
 public:
  HermOp(Dims dims, Mat entries);
  static HermOp identity(const Dims& dims);
  static HermOp outer(const Ket& ket, const Ket& bra);

  const Dims& dims() const { return dims_; }
  const Mat& entries() const { return m_; }
  cplx operator()(long p, long q) const { return m_(p, q); }

  bool hermitian() const { return hermitian_; }
  double hermiticity_error() const;
  cplx trace() const { return m_.trace(); }

 private:
  Dims dims_;
  Mat m_;
  bool hermitian_ = false;
};

/// Product vector with amplitude prod_r factors[r][i_r].
Ket kron(const Dims& dims, std::span<const Vec> factors);

/// Partial transpose on one slot: result(p, q) = op(sigma_slot(p, q)).
HermOp partial_transpose(const HermOp& op, int slot);

/// Partial transpose over every slot in `cut`, which must be a proper nonempty subset.
HermOp partial_transpose_cut(const HermOp& op, std::span<const int> cut);

/// Permutation operator of the index reversal i_r -> d_r - 1 - i_r on every slot.
HermOp reversal_operator(const Dims& dims);

/// Image of a rank under the reversal involution.
long reverse_rank(const Dims& dims, long rank);

}  // namespace ces
