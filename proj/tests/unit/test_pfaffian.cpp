#include "mam/config.hpp"
#include "mam/pfaffian.hpp"

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace mam;

namespace {

Mat random_skew(Philox& rng, int n) {
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.gaussian();
  return a - a.transpose();
}

}  // namespace

TEST_CASE("Pfaffian small cases") {
  Mat a(2, 2);
  a << 0, 3, -3, 0;
  CHECK(pfaffian(a) == doctest::Approx(3.0));
  Mat b(4, 4);
  b << 0, 1, 2, 3, -1, 0, 4, 5, -2, -4, 0, 6, -3, -5, -6, 0;
  CHECK(pfaffian(b) == doctest::Approx(1 * 6 - 2 * 5 + 3 * 4));
  CHECK(pfaffian(Mat::Zero(3, 3)) == 0.0);
  CHECK(pfaffian(Mat(0, 0)) == 1.0);
}

TEST_CASE("property: Householder Pfaffian matches the recursive expansion and Pf^2 = det") {
  Philox rng(21, 0);
  for (int n = 2; n <= 10; n += 2)
    for (int t = 0; t < 20; ++t) {
      const Mat a = random_skew(rng, n);
      const double fast = pfaffian(a);
      const double slow = oracle::pfaffian_recursive(a);
      CHECK(std::abs(fast - slow) <= 1e-10 * (1.0 + std::abs(slow)) * std::pow(a.norm(), n / 2));
      const double det = a.determinant();
      CHECK(std::abs(fast * fast - det) <= 1e-9 * (1.0 + std::abs(det)));
    }
}

TEST_CASE("property: top form agrees with the permutation sum and the wedge algebra") {
  Philox rng(22, 0);
  for (int d : {3, 5, 7}) {
    for (int t = 0; t < 30; ++t) {
      const Vec alpha = fixtures::random_vec(rng, d);
      const Mat omega = random_skew(rng, d);
      double mag = 0.0;
      const double perm = oracle::top_form_permutations(alpha, omega, &mag);
      const double wedge = oracle::top_form_wedge(alpha, omega);
      const double fast = top_form_value(alpha, omega);
      CHECK(std::abs(fast - perm) <= 1e-10 * std::max(1.0, mag));
      CHECK(std::abs(wedge - perm) <= 1e-10 * std::max(1.0, mag));
    }
  }
}

TEST_CASE("top form on a Darboux frame") {
  // alpha = e^0, omega = sum e^{2i-1} ^ e^{2i}: alpha ^ omega^k = k! on the standard basis.
  for (int k = 1; k <= 4; ++k) {
    const int d = 2 * k + 1;
    Vec alpha = Vec::Zero(d);
    alpha(0) = 1.0;
    Mat omega = Mat::Zero(d, d);
    for (int i = 0; i < k; ++i) {
      omega(1 + 2 * i, 2 + 2 * i) = 1.0;
      omega(2 + 2 * i, 1 + 2 * i) = -1.0;
    }
    CHECK(top_form_value(alpha, omega) == doctest::Approx(std::tgamma(k + 1.0)));
  }
}

TEST_CASE("top form rejects even sizes") {
  CHECK_THROWS_AS(top_form_value(Vec::Zero(4), Mat::Zero(4, 4)), StructuralError);
  CHECK_THROWS_AS(top_form_value(Vec::Zero(3), Mat::Zero(5, 5)), StructuralError);
}
