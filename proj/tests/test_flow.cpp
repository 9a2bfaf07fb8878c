#include <gtest/gtest.h>

#include <cmath>

#include "crflow/config.hpp"
#include "crflow/errors.hpp"
#include "crflow/flow.hpp"

using namespace crflow;

namespace {

Real dec(const char* s) { return Real::from_string(s); }

class Flow : public ::testing::Test {
 protected:
  ScopedPrecision scope_{192};
  FlowMap f0_{HoloSeries::identity(), Alpha::zero()};
  FlowMap f1_{HoloSeries::identity(), Alpha::nonzero(Real(1))};
  VectorField v0_{HoloSeries::identity(), Alpha::zero()};
  VectorField v1_{HoloSeries::identity(), Alpha::nonzero(Real(1))};
};

}  // namespace

TEST_F(Flow, FieldSpotValues) {
  const Point2 origin = eval_field(v1_, Complex(0), Complex(0));
  EXPECT_TRUE(origin.z1.is_zero() && origin.z2.is_zero());
  const Point2 h = eval_field(v0_, Complex(1), Complex(dec("0.1")));
  EXPECT_EQ(h.z1, Complex(dec("0.1")));
  EXPECT_EQ(h.z2, Complex(Real(0), dec("0.1")));
  const Complex z2(dec("0.05"), dec("0.02"));
  const Point2 h1 = eval_field(v1_, Complex(0), z2);
  EXPECT_TRUE(h1.z1.is_zero());
  EXPECT_EQ(h1.z2, mul_i(z2));
  // L(z1) = e^{z1} - 1
  const Complex z1(dec("0.3"), dec("-0.2"));
  EXPECT_LT(abs(eval_L(Alpha::nonzero(Real(1)), z1) - (exp(z1) - Complex(1))).to_double(), 1e-56);
  // L^alpha -> z1 for tiny alpha without cancellation
  EXPECT_LT(abs(eval_L(Alpha::nonzero(Real(1e-40)), z1) - z1).to_double(), 1e-40);
}

TEST_F(Flow, ClosedFormSpotValues) {
  const Complex z1(dec("0.02"), dec("0.01")), z2(dec("0.06"), dec("-0.03"));
  for (const FlowMap* f : {&f0_, &f1_}) {
    const Point2 same = flow_closed(*f, Real(0), z1, z2);
    EXPECT_EQ(same.z1, z1);
    EXPECT_EQ(same.z2, z2);
    const Point2 axis = flow_closed(*f, dec("0.7"), z1, Complex(0));
    EXPECT_LT(abs(axis.z1 - z1).to_double(), 1e-56);
    EXPECT_TRUE(axis.z2.is_zero());
  }
  const Point2 p = flow_closed(f0_, pi(), Complex(1), Complex(dec("0.1")));
  EXPECT_LT(abs(p.z1 - exp(Complex(Real(0), dec("0.2")))).to_double(), 1e-55);
  EXPECT_LT(abs(p.z2 + Complex(dec("0.1"))).to_double(), 1e-55);
}

TEST_F(Flow, ClosedFormAgainstRk4) {
  const Complex z1(dec("-0.01"), dec("0.05")), z2(dec("0.08"), dec("0.01"));
  for (const FlowMap* f : {&f0_, &f1_}) {
    const Point2 exact = flow_closed(*f, dec("0.8"), z1, z2);
    double prev = 0.0;
    for (int steps : {10, 20, 40, 80}) {
      const Point2 approx = flow_ode(*f, dec("0.8"), z1, z2, steps);
      const double err = distance(exact, approx).to_double();
      EXPECT_LT(abs(approx.z2 - z2 * Complex::polar_unit(dec("0.8"))).to_double(), 1e-6);
      if (prev > 0.0) EXPECT_NEAR(err / prev, 1.0 / 16.0, 0.2 / 16.0) << steps;
      prev = err;
    }
    EXPECT_LT(prev, 1e-9);
  }
  EXPECT_THROW(flow_ode(f1_, Real(1), z1, z2, 0), std::invalid_argument);
}

TEST_F(Flow, GroupLawAndInverse) {
  const Complex z1(dec("0.01"), dec("-0.04")), z2(dec("-0.05"), dec("0.07"));
  for (const FlowMap* f : {&f0_, &f1_}) {
    for (int k = 0; k < 20; ++k) {
      const Real s(uniform01(21, 0, k) - 0.5), t(uniform01(21, 1, k) - 0.5);
      const Point2 a = flow_closed(*f, t, z1, z2);
      const Point2 b = flow_closed(*f, s, a.z1, a.z2);
      const Point2 c = flow_closed(*f, s + t, z1, z2);
      EXPECT_LT(distance(b, c).to_double(), 1e-55);
      const Point2 back = flow_closed(*f, -t, a.z1, a.z2);
      EXPECT_LT(distance(back, Point2{z1, z2}).to_double(), 1e-55);
    }
  }
}

TEST_F(Flow, LongTimesAreComposed) {
  const Complex z1(dec("0.01")), z2(dec("0.05"));
  // full turns return to the start since I(z2, 2 pi) = 0
  const Point2 p = flow_closed(f1_, ldexp(pi(), 2), z1, z2);
  EXPECT_LT(distance(p, Point2{z1, z2}).to_double(), 1e-54);
  const Point2 a = flow_closed(f1_, Real(9), z1, z2);
  const Point2 b = flow_closed(f1_, Real(3), z1, z2);
  const Point2 c = flow_closed(f1_, Real(6), b.z1, b.z2);
  EXPECT_LT(distance(a, c).to_double(), 1e-54);
}

TEST_F(Flow, BranchGuard) {
  // 1 + (e^{-z1} - 1) e^{I} with e^{-z1} large and I rotating the phase
  const FlowMap steep{HoloSeries({Complex(40)}), Alpha::nonzero(Real(1))};
  EXPECT_THROW(flow_closed(steep, pi(), Complex(Real(-3)), Complex(dec("0.05"))), DomainError);
  const Complex nan(Real(0) / Real(0));
  EXPECT_THROW(flow_closed(f1_, Real(1), nan, Complex(0)), DomainError);
}

TEST_F(Flow, Rotations) {
  const Complex z1(dec("0.3")), z2(dec("0.04"), dec("0.02"));
  const Point2 id = rotation_flow(Real(0), z1, z2);
  EXPECT_EQ(id.z2, z2);
  EXPECT_LT(abs(rotation_flow(ldexp(pi(), 1), z1, z2).z2 - z2).to_double(), 1e-56);
  const Point2 st = rotation_flow(dec("0.4"), z1, rotation_flow(dec("1.1"), z1, z2).z2);
  EXPECT_LT(abs(st.z2 - rotation_flow(dec("1.5"), z1, z2).z2).to_double(), 1e-56);
  EXPECT_EQ(st.z1, z1);
}

TEST_F(Flow, GeneratorCheck) {
  const Complex z1(dec("0.01"), dec("0.02")), z2(dec("0.06"), dec("-0.02"));
  std::vector<double> h, err;
  for (const char* s : {"1e-2", "1e-3", "1e-4"}) {
    h.push_back(dec(s).to_double());
    err.push_back(generator_check(f1_, v1_, z1, z2, dec(s)).to_double());
  }
  EXPECT_NEAR(std::log(err[0] / err[2]) / std::log(h[0] / h[2]), 2.0, 0.1);
  EXPECT_TRUE(generator_check(f1_, v1_, Complex(0), Complex(0), dec("1e-3")).is_zero());

  // mismatched alpha: residual stays near |L^1(z1) - z1| |a(z2)|
  const Complex w1(dec("0.5")), w2(dec("0.05"));
  const double floor = (abs(eval_L(Alpha::nonzero(Real(1)), w1) - w1) * abs(w2)).to_double();
  for (const char* s : {"1e-2", "1e-3", "1e-4"}) {
    EXPECT_NEAR(generator_check(f1_, v0_, w1, w2, dec(s)).to_double(), floor, 0.05 * floor);
  }
}
