#include <gtest/gtest.h>

#include "crflow/errors.hpp"
#include "crflow/series.hpp"
#include "crflow/surface.hpp"
#include "oracles.hpp"

using namespace crflow;

namespace {

Real dec(const char* s) { return Real::from_string(s); }

class Series : public ::testing::Test {
 protected:
  ScopedPrecision scope_{192};
};

}  // namespace

TEST_F(Series, IdentityAndOrigin) {
  EXPECT_EQ(eval_series(HoloSeries::identity(), Complex(dec("0.1"))), Complex(dec("0.1")));
  const HoloSeries s({Complex(Real(2), Real(1)), Complex(Real(-3))});
  EXPECT_TRUE(eval_series(s, Complex(0)).is_zero());
}

TEST_F(Series, HornerMatchesPowerSum) {
  const HoloSeries s({Complex(1), Complex(1)});
  const Complex z(Real(0), dec("0.1"));
  const Complex v = eval_series(s, z);
  EXPECT_LT(abs(v - Complex(dec("-0.01"), dec("0.1"))).to_double(), 1e-57);

  std::vector<Complex> c;
  for (int n = 1; n <= 9; ++n) c.emplace_back(Real(n) / Real(7), Real(3 - n));
  const HoloSeries big(c);
  for (int k = 0; k < 10; ++k) {
    const Complex w = Complex(Real(uniform01(3, 0, k) - 0.5), Real(uniform01(3, 1, k) - 0.5));
    EXPECT_LT(abs(eval_series(big, w) - oracle::power_sum(c, w)).to_double(), 1e-55);
  }
}

TEST_F(Series, RejectsBadInput) {
  EXPECT_THROW(HoloSeries({}), std::invalid_argument);
  EXPECT_THROW(HoloSeries({Complex(Real(0) / Real(0))}), std::invalid_argument);
  const Complex inf(Real(1) / Real(0));
  EXPECT_THROW(eval_series(HoloSeries::identity(), inf), DomainError);
}

TEST_F(Series, DerivedSeries) {
  const auto a = HoloSeries::identity();
  EXPECT_EQ(derived_series(a, SeriesKind::kDivideByN).coeff(1), Complex(1));
  EXPECT_EQ(derived_series(a, SeriesKind::kDivideByIN).coeff(1), Complex(Real(0), Real(-1)));

  const HoloSeries sq({Complex(0), Complex(1)});
  const HoloSeries shifted = derived_series(sq, SeriesKind::kShiftDerivative);
  for (int k = 0; k < 10; ++k) {
    const Complex z(Real(uniform01(5, 0, k) + 0.1), Real(uniform01(5, 1, k) - 0.5));
    EXPECT_LT(abs(eval_series(shifted, z) - eval_series(sq, z) / z).to_double(), 1e-55);
    EXPECT_LT(abs(shifted_quotient(sq, z) - z).to_double(), 1e-55);
  }
  EXPECT_TRUE(derived_series(a, SeriesKind::kShiftDerivative).is_zero());
  EXPECT_EQ(shifted_quotient(a, Complex(0)), Complex(1));
}

TEST_F(Series, ArcIntegralAgainstQuadrature) {
  const auto a = HoloSeries::identity();
  const Complex z2(dec("0.1"));
  EXPECT_TRUE(arc_integral(a, z2, Real(0)).is_zero());
  EXPECT_TRUE(arc_integral(a, Complex(0), Real(1)).is_zero());

  const Complex half_turn = arc_integral(a, z2, pi());
  EXPECT_LT(abs(half_turn - Complex(Real(0), dec("0.2"))).to_double(), 1e-55);

  const HoloSeries s({Complex(Real(1), Real(-1)), Complex(dec("0.5")), Complex(Real(0), Real(2))});
  const Complex w(dec("0.07"), dec("-0.04"));
  for (const char* t : {"0.3", "-1.1", "2.5"}) {
    const Complex quad = oracle::integrate(
        [&](const Real& tau) { return eval_series(s, w * Complex::polar_unit(tau)); }, Real(0),
        dec(t), 1e-40);
    EXPECT_LT(abs(arc_integral(s, w, dec(t)) - quad).to_double(), 1e-38) << "t=" << t;
  }
}

TEST_F(Series, ArcIntegralSmallTimeHasNoCancellation) {
  // I ~ t a(z2) for small t; relative error stays at working precision
  const auto a = HoloSeries::identity();
  const Complex z2(dec("0.1"));
  const Real t(1e-30);
  const Complex rel = (arc_integral(a, z2, t) - t * z2) / (t * z2);
  EXPECT_LT(abs(rel).to_double(), 1e-29);
}
