#include "ces/tensor.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ces {

Dims::Dims(std::vector<int> extents) : extents_(std::move(extents)) {
  if (extents_.size() < 2) {
    throw Error("dims: at least two slots are required (k >= 2)");
  }
  for (int d : extents_) {
    if (d < 2) {
      throw Error("dims: every local dimension must be >= 2, got " + std::to_string(d));
    }
    if (total_ > kMaxDimension / d) {
      throw Error("dims: total dimension exceeds " + std::to_string(kMaxDimension));
    }
    total_ *= d;
    top_level_ += d - 1;
  }
  strides_.assign(extents_.size(), 1);
  for (int r = k() - 2; r >= 0; --r) {
    strides_[r] = strides_[r + 1] * extents_[r + 1];
  }
}

long Dims::M() const {
  long sum = std::accumulate(extents_.begin(), extents_.end(), 0L);
  return total_ - sum + k() - 1;
}

long Dims::rank_of(std::span<const int> digits) const {
  if (static_cast<int>(digits.size()) != k()) {
    throw Error("multi-index length does not match dims");
  }
  long rank = 0;
  for (int r = 0; r < k(); ++r) {
    if (digits[r] < 0 || digits[r] >= extents_[r]) {
      throw Error("multi-index digit out of range");
    }
    rank += digits[r] * strides_[r];
  }
  return rank;
}

std::vector<int> Dims::digits_of(long rank) const {
  std::vector<int> out(extents_.size());
  for (int r = 0; r < k(); ++r) out[r] = digit(rank, r);
  return out;
}

int Dims::level_of(long rank) const {
  int n = 0;
  for (int r = 0; r < k(); ++r) n += digit(rank, r);
  return n;
}

void Dims::check_slot(int slot) const {
  if (slot < 0 || slot >= k()) {
    throw Error("slot " + std::to_string(slot) + " out of range for " + to_string());
  }
}

std::string Dims::to_string() const {
  std::ostringstream os;
  os << '(';
  for (int r = 0; r < k(); ++r) os << (r ? "," : "") << extents_[r];
  os << ')';
  return os.str();
}

std::vector<MultiIndex> enumerate_indices(const Dims& dims) {
  std::vector<MultiIndex> out;
  out.reserve(dims.D());
  for (long rank = 0; rank < dims.D(); ++rank) {
    MultiIndex mi{dims.digits_of(rank), 0, rank};
    mi.level = std::accumulate(mi.digits.begin(), mi.digits.end(), 0);
    out.push_back(std::move(mi));
  }
  return out;
}

std::vector<std::vector<long>> level_sets(const Dims& dims) {
  std::vector<std::vector<long>> sets(dims.N() + 1);
  for (long rank = 0; rank < dims.D(); ++rank) sets[dims.level_of(rank)].push_back(rank);
  return sets;
}

std::vector<long> level_sizes(const Dims& dims) {
  std::vector<long> coeff{1};
  for (int d : dims.extents()) {
    std::vector<long> next(coeff.size() + d - 1, 0);
    for (std::size_t a = 0; a < coeff.size(); ++a)
      for (int b = 0; b < d; ++b) next[a + b] += coeff[a];
    coeff = std::move(next);
  }
  return coeff;
}

// ---------------------------------------------------------------------------

Ket::Ket(Dims dims, Vec amplitudes) : dims_(std::move(dims)), amps_(std::move(amplitudes)) {
  if (amps_.size() != dims_.D()) {
    throw Error("ket: amplitude count " + std::to_string(amps_.size()) + " does not match D = " +
                std::to_string(dims_.D()));
  }
  if (!amps_.allFinite()) throw Error("ket: non-finite amplitude");
}

Ket Ket::zero(const Dims& dims) { return Ket(dims, Vec::Zero(dims.D())); }

Ket Ket::basis(const Dims& dims, long rank) {
  if (rank < 0 || rank >= dims.D()) throw Error("basis ket: rank " + std::to_string(rank) + " out of range");
  Vec v = Vec::Zero(dims.D());
  v[rank] = 1.0;
  return Ket(dims, std::move(v));
}

bool Ket::is_unit() const { return std::abs(norm() - 1.0) <= kUnitTol; }

Ket Ket::normalized() const {
  double n = norm();
  if (n == 0.0) throw Error("ket: cannot normalize the zero vector");
  return Ket(dims_, amps_ / n);
}

cplx Ket::inner(const Ket& other) const {
  if (!(dims_ == other.dims_)) throw Error("ket: inner product across different dims");
  return amps_.dot(other.amps_);
}

// ---------------------------------------------------------------------------

HermOp::HermOp(Dims dims, Mat entries) : dims_(std::move(dims)), m_(std::move(entries)) {
  if (m_.rows() != dims_.D() || m_.cols() != dims_.D()) {
    throw Error("operator: matrix shape does not match D = " + std::to_string(dims_.D()));
  }
  hermitian_ = hermiticity_error() <= kHermitianTol;
}

HermOp HermOp::identity(const Dims& dims) { return HermOp(dims, Mat::Identity(dims.D(), dims.D())); }

HermOp HermOp::outer(const Ket& ket, const Ket& bra) {
  if (!(ket.dims() == bra.dims())) throw Error("operator: outer product across different dims");
  return HermOp(ket.dims(), ket.amplitudes() * bra.amplitudes().adjoint());
}

double HermOp::hermiticity_error() const {
  if (m_.size() == 0) return 0.0;
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------

Ket kron(const Dims& dims, std::span<const Vec> factors) {
  if (static_cast<int>(factors.size()) != dims.k()) {
    throw Error("kron: expected " + std::to_string(dims.k()) + " factors");
  }
  for (int r = 0; r < dims.k(); ++r) {
    if (factors[r].size() != dims[r]) {
      throw Error("kron: factor " + std::to_string(r) + " has length " + std::to_string(factors[r].size()) +
                  ", expected " + std::to_string(dims[r]));
    }
  }
  Vec out(dims.D());
  for (long rank = 0; rank < dims.D(); ++rank) {
    cplx a = 1.0;
    for (int r = 0; r < dims.k(); ++r) a *= factors[r][dims.digit(rank, r)];
    out[rank] = a;
  }
  return Ket(dims, std::move(out));
}

HermOp partial_transpose(const HermOp& op, int slot) {
  const Dims& dims = op.dims();
  dims.check_slot(slot);
  const long D = dims.D();
  const long s = dims.stride(slot);
  std::vector<int> dig(D);
  for (long r = 0; r < D; ++r) dig[r] = dims.digit(r, slot);

  Mat out(D, D);
  const Mat& in = op.entries();
  for (long q = 0; q < D; ++q) {
    for (long p = 0; p < D; ++p) {
      long dp = dig[p], dq = dig[q];
      long p2 = p + (dq - dp) * s;
      long q2 = q + (dp - dq) * s;
      out(p, q) = in(p2, q2);
    }
  }
  return HermOp(dims, std::move(out));
}

HermOp partial_transpose_cut(const HermOp& op, std::span<const int> cut) {
  const Dims& dims = op.dims();
  std::vector<int> slots(cut.begin(), cut.end());
  std::sort(slots.begin(), slots.end());
  slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
  if (slots.empty() || static_cast<int>(slots.size()) >= dims.k()) {
    throw Error("partial transpose: cut must be a proper nonempty subset of slots");
  }
  for (int s : slots) dims.check_slot(s);
  HermOp out = op;
  for (int s : slots) out = partial_transpose(out, s);
  return out;
}

long reverse_rank(const Dims& dims, long rank) {
  long out = 0;
  for (int r = 0; r < dims.k(); ++r) out += (dims[r] - 1 - dims.digit(rank, r)) * dims.stride(r);
  return out;
}

HermOp reversal_operator(const Dims& dims) {
  Mat R = Mat::Zero(dims.D(), dims.D());
  for (long p = 0; p < dims.D(); ++p) R(reverse_rank(dims, p), p) = 1.0;
  return HermOp(dims, std::move(R));
}

}  // namespace ces
