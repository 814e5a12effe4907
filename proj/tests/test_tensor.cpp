#include <doctest.h>

#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "ces/tensor.hpp"

using namespace ces;

namespace {

Mat random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

Vec random_vec(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = cplx(g(rng), g(rng));
  return v;
}

}  // namespace

TEST_CASE("dims validation") {
  CHECK_THROWS_AS(Dims({2}), Error);
  CHECK_THROWS_AS(Dims({2, 1}), Error);
  CHECK_THROWS_AS(Dims({64, 65}), Error);
  CHECK_NOTHROW(Dims({64, 64}));
  const Dims d({2, 3, 4});
  CHECK(d.D() == 24);
  CHECK(d.N() == 6);
  CHECK(d.M() == 24 - 9 + 2);
  CHECK(d.stride(0) == 12);
  CHECK(d.stride(2) == 1);
  CHECK_THROWS_AS(d.check_slot(3), Error);
}

TEST_CASE("rank and digits are inverse and lexicographic") {
  const Dims d({3, 2, 4});
  const auto all = enumerate_indices(d);
  REQUIRE(all.size() == 24);
  for (std::size_t r = 0; r < all.size(); ++r) {
    CHECK(all[r].rank == static_cast<long>(r));
    CHECK(d.rank_of(all[r].digits) == static_cast<long>(r));
    CHECK(d.digits_of(static_cast<long>(r)) == all[r].digits);
    if (r > 0) CHECK(all[r - 1].digits < all[r].digits);
    int sum = 0;
    for (int x : all[r].digits) sum += x;
    CHECK(all[r].level == sum);
  }
}

TEST_CASE("level sizes match a brute-force count") {
  for (auto ext : std::vector<std::vector<int>>{{3, 3}, {2, 2, 2}, {2, 3, 4}, {4, 4, 3, 2}, {5, 2}}) {
    const Dims d(ext);
    std::vector<long> count(static_cast<std::size_t>(d.N() + 1), 0);
    for (long r = 0; r < d.D(); ++r) ++count[static_cast<std::size_t>(d.level_of(r))];
    CHECK(level_sizes(d) == count);
    const auto sets = level_sets(d);
    for (int n = 0; n <= d.N(); ++n) {
      CHECK(static_cast<long>(sets[n].size()) == count[n]);
      CHECK(std::is_sorted(sets[n].begin(), sets[n].end()));
    }
  }
  CHECK(level_sizes(Dims({3, 3})) == std::vector<long>{1, 2, 3, 2, 1});
}

TEST_CASE("kron agrees with Eigen's Kronecker product") {
  std::mt19937_64 rng(7);
  const Dims d({2, 3, 2});
  std::vector<Vec> f{random_vec(2, rng), random_vec(3, rng), random_vec(2, rng)};
  const Vec oracle = Eigen::kroneckerProduct(Eigen::kroneckerProduct(f[0], f[1]).eval(), f[2]).eval();
  CHECK((kron(d, f).amplitudes() - oracle).norm() < 1e-13);
  CHECK_THROWS_AS(kron(d, std::vector<Vec>{f[0], f[1]}), Error);
}

TEST_CASE("ket basics") {
  const Dims d({2, 2});
  const Ket e = Ket::basis(d, 2);
  CHECK(e.is_unit());
  CHECK(e[2] == cplx(1.0));
  CHECK_THROWS_AS(Ket::basis(d, 4), Error);
  Ket v = Ket::zero(d);
  v[0] = cplx(0, 1);
  v[3] = 1.0;
  CHECK(v.norm() == doctest::Approx(std::sqrt(2.0)));
  CHECK(v.normalized().is_unit());
  // <v|e_0> = conj(i)
  CHECK(std::abs(v.inner(Ket::basis(d, 0)) - cplx(0, -1)) < 1e-15);
}

TEST_CASE("partial transpose of a product operator transposes one factor") {
  std::mt19937_64 rng(11);
  const Dims d({2, 3, 2});
  const Mat a = random_matrix(2, rng), b = random_matrix(3, rng), c = random_matrix(2, rng);
  const Mat full = Eigen::kroneckerProduct(Eigen::kroneckerProduct(a, b).eval(), c).eval();
  const HermOp op(d, full);
  const Mat o0 = Eigen::kroneckerProduct(Eigen::kroneckerProduct(a.transpose(), b).eval(), c).eval();
  const Mat o1 = Eigen::kroneckerProduct(Eigen::kroneckerProduct(a, b.transpose()).eval(), c).eval();
  const Mat o2 = Eigen::kroneckerProduct(Eigen::kroneckerProduct(a, b).eval(), c.transpose()).eval();
  CHECK((partial_transpose(op, 0).entries() - o0).norm() < 1e-12);
  CHECK((partial_transpose(op, 1).entries() - o1).norm() < 1e-12);
  CHECK((partial_transpose(op, 2).entries() - o2).norm() < 1e-12);
}

TEST_CASE("partial transpose is a linear involution, and cuts compose") {
  std::mt19937_64 rng(5);
  const Dims d({2, 3, 2});
  const HermOp x(d, random_matrix(12, rng)), y(d, random_matrix(12, rng));
  const cplx alpha(0.3, -1.2);
  for (int j = 0; j < d.k(); ++j) {
    CHECK((partial_transpose(partial_transpose(x, j), j).entries() - x.entries()).norm() < 1e-14);
    const HermOp lin(d, alpha * x.entries() + y.entries());
    const Mat rhs = alpha * partial_transpose(x, j).entries() + partial_transpose(y, j).entries();
    CHECK((partial_transpose(lin, j).entries() - rhs).norm() < 1e-12);
  }
  // PT over E followed by a full transpose is PT over the complement of E.
  const std::vector<int> e{0, 2}, ec{1};
  const Mat lhs = partial_transpose_cut(x, e).entries().transpose();
  CHECK((lhs - partial_transpose_cut(x, ec).entries()).norm() < 1e-14);
  CHECK_THROWS_AS(partial_transpose_cut(x, std::vector<int>{0, 1, 2}), Error);
  CHECK_THROWS_AS(partial_transpose_cut(x, std::vector<int>{}), Error);
}

TEST_CASE("singlet partial transpose") {
  const Dims d({2, 2});
  Ket s = Ket::zero(d);
  s[1] = 1.0 / std::sqrt(2.0);
  s[2] = -1.0 / std::sqrt(2.0);
  const HermOp pt = partial_transpose(HermOp::outer(s, s), 0);
  // Explicit matrix: 1/2 (|00><11| + |11><00|) with -1/2 and ... entries on the middle block.
  Mat expect = Mat::Zero(4, 4);
  expect(1, 1) = expect(2, 2) = 0.5;
  expect(0, 3) = expect(3, 0) = -0.5;
  CHECK((pt.entries() - expect).norm() < 1e-15);
}

TEST_CASE("reversal operator") {
  const Dims d({2, 3, 4});
  const HermOp r = reversal_operator(d);
  CHECK((r.entries() * r.entries() - Mat::Identity(24, 24)).norm() == 0.0);
  for (long p = 0; p < d.D(); ++p) {
    CHECK(d.level_of(reverse_rank(d, p)) == d.N() - d.level_of(p));
    CHECK(reverse_rank(d, reverse_rank(d, p)) == p);
  }
}

TEST_CASE("operator shape and hermiticity") {
  const Dims d({2, 2});
  CHECK_THROWS_AS(HermOp(d, Mat::Zero(3, 3)), Error);
  Mat m = Mat::Zero(4, 4);
  m(0, 1) = 1.0;
  CHECK_FALSE(HermOp(d, m).hermitian());
  CHECK(HermOp::identity(d).hermitian());
  CHECK(HermOp::identity(d).trace() == cplx(4.0));
}
