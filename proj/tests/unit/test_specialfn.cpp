#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "memkinetics/specialfn.hpp"
#include "support/mpfr_oracle.hpp"

using namespace memkinetics;

namespace {

double rel(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

}  // namespace

TEST(LnGamma, FactorialValues) {
  EXPECT_EQ(ln_gamma(1.0).value, 0.0);
  EXPECT_NEAR(ln_gamma(0.5).value, 0.5723649429247001, 1e-15);
  EXPECT_NEAR(ln_gamma(5.0).value, std::log(24.0), 1e-14);
  EXPECT_EQ(ln_gamma(5.0).sign, 1);
}

TEST(LnGamma, AgreesWithMpfrOnDocumentedRange) {
  for (double x = 1e-6; x <= 170.0; x *= 1.37) {
    const double want = oracle::ln_gamma(x);
    const double got = ln_gamma(x).value;
    // Relative accuracy, with an absolute floor where ln|Gamma| crosses 0.
    EXPECT_LE(std::fabs(got - want), 1e-13 * std::max(1.0, std::fabs(want))) << "x = " << x;
  }
}

TEST(LnGamma, ReflectionGivesSignBelowZero) {
  EXPECT_EQ(ln_gamma(-0.5).sign, -1);  // Gamma(-1/2) = -2 sqrt(pi)
  EXPECT_NEAR(ln_gamma(-0.5).value, std::log(2.0 * std::sqrt(M_PI)), 1e-14);
  EXPECT_EQ(ln_gamma(-1.5).sign, 1);
  EXPECT_NEAR(ln_gamma(-2.3).value, oracle::ln_gamma(-2.3), 1e-13);
}

TEST(LnGamma, PolesThrow) {
  EXPECT_THROW(ln_gamma(0.0), PoleError);
  EXPECT_THROW(ln_gamma(-3.0), PoleError);
  EXPECT_THROW(ln_gamma(NAN), DomainError);
}

TEST(MittagLeffler, ExponentialCase) {
  EXPECT_NEAR(mittag_leffler(1, 1, 1.0), 2.718281828459045, 4e-16);
}

TEST(MittagLeffler, ZeroArgumentIsReciprocalGamma) {
  EXPECT_EQ(mittag_leffler(0.7, 1, 0.0), 1.0);
  for (double alpha : {0.3, 0.5, 1.0, 1.5, 2.0}) {
    for (double beta : {0.5, 1.0, 1.7, 3.0}) {
      EXPECT_NEAR(mittag_leffler(alpha, beta, 0.0), 1.0 / std::tgamma(beta), 1e-15);
    }
  }
}

TEST(MittagLeffler, HyperbolicCosine) {
  EXPECT_NEAR(mittag_leffler(2, 1, 1.0), 1.5430806348152437, 1e-15);
  EXPECT_NEAR(mittag_leffler(2, 1, 1.0), oracle::mittag_leffler(2, 1, 1.0), 1e-15);
}

TEST(MittagLeffler, HalfOrderErfcIdentity) {
  EXPECT_NEAR(mittag_leffler(0.5, 1, 1.0), 5.00898008076228, 1e-12);
  for (double z : {-6.0, -2.0, -0.3, 0.4, 1.0, 3.0}) {
    EXPECT_LE(rel(mittag_leffler(0.5, 1, z), oracle::half_order_mittag_leffler_via_erfc(z)), 1e-12)
        << "z = " << z;
  }
}

TEST(MittagLeffler, MatchesMpfrSeriesAcrossRegimes) {
  // Taylor, extended-precision Taylor and both asymptotic branches are all
  // exercised here; the oracle only sums the defining series.
  for (double alpha : {0.25, 0.5, 0.8, 1.0, 1.3, 1.7, 2.0}) {
    for (double beta : {0.5, 1.0, 1.6, 2.5}) {
      const double zmax = std::min(60.0, std::pow(700.0, alpha) * 0.9);
      for (double z : {-zmax, -25.0, -9.0, -3.0, -0.7, 0.6, 4.0, 12.0, 30.0, zmax}) {
        if (std::fabs(z) > zmax) continue;
        const double want = oracle::mittag_leffler(alpha, beta, z);
        const double got = mittag_leffler(alpha, beta, z);
        // Oscillating cases (alpha > 1, z < 0) have zeros; measure against the
        // function scale there.
        const double scale = std::max(std::fabs(want), alpha > 1.0 && z < 0 ? 1e-3 : 0.0);
        EXPECT_LE(std::fabs(got - want), 1e-10 * scale)
            << "alpha=" << alpha << " beta=" << beta << " z=" << z;
      }
    }
  }
}

TEST(MittagLeffler, DomainChecks) {
  EXPECT_THROW(mittag_leffler(0.0, 1, 1.0), DomainError);
  EXPECT_THROW(mittag_leffler(2.5, 1, 1.0), DomainError);
  EXPECT_THROW(mittag_leffler(0.5, 1, 700.0 * 700.0), DomainError);  // |z| > 700^alpha
  EXPECT_THROW(mittag_leffler(1, 1, NAN), DomainError);
}

TEST(MittagLeffler, TermBudgetExhaustionThrows) {
  SeriesControl ctl;
  ctl.max_terms = 5;
  EXPECT_THROW(mittag_leffler(0.8, 1, 3.0, ctl), ConvergenceError);
}

TEST(MittagLeffler, MonotoneInTimeForPositiveRate) {
  for (double alpha : {0.2, 0.5, 0.8, 1.0}) {
    double prev = -1.0;
    for (double t : linspace(0.0, 20.0, 401)) {
      const double v = mittag_leffler(alpha, 1, 0.5 * std::pow(t, alpha));
      EXPECT_GT(v, prev) << "alpha=" << alpha << " t=" << t;
      prev = v;
    }
  }
}

TEST(MittagLeffler, HalvingTolerancePreservesValue) {
  for (double alpha : {0.3, 0.9, 1.6}) {
    const double zmax = std::min(8.0, std::pow(700.0, alpha));  // overflow guard
    for (double z : linspace(-zmax, zmax, 17)) {
      SeriesControl loose;
      loose.rtol = 1e-8;
      SeriesControl tight = loose;
      tight.rtol = loose.rtol / 2;
      const double a = mittag_leffler(alpha, 1.2, z, loose);
      const double b = mittag_leffler(alpha, 1.2, z, tight);
      EXPECT_LE(std::fabs(a - b), loose.rtol * std::fabs(b)) << alpha << ' ' << z;
    }
  }
}

TEST(KilbasSaigo, ZeroArgumentIsOne) {
  EXPECT_EQ(kilbas_saigo({0.8, 1.6, 0.3}, 0.0), 1.0);
  EXPECT_EQ(kilbas_saigo({1.5, 2.0, -0.2}, 0.0), 1.0);
}

TEST(KilbasSaigo, ReducesToMittagLefflerForZeroPriceExponent) {
  EXPECT_NEAR(kilbas_saigo({0.8, 1, 0}, 0.5), mittag_leffler(0.8, 1, 0.5), 1e-14);
  const double rtol = SeriesControl{}.rtol;
  for (int k = 0; k <= 3; ++k) {
    for (double alpha : {0.5, 0.8, 1.5}) {
      for (double z : linspace(-2.0, 2.0, 21)) {
        const double want = std::tgamma(k + 1.0) * mittag_leffler(alpha, k + 1.0, z);
        EXPECT_LE(std::fabs(kilbas_saigo({alpha, 1.0, k / alpha}, z) - want), 10 * rtol * std::fabs(want))
            << "k=" << k << " alpha=" << alpha << " z=" << z;
      }
    }
  }
}

TEST(KilbasSaigo, ExponentialCase) {
  EXPECT_NEAR(kilbas_saigo({1, 1, 0}, 1.0), 2.718281828459045, 1e-15);
}

TEST(KilbasSaigo, MatchesMpfrRecursion) {
  for (double alpha : {0.5, 0.8, 1.3}) {
    for (double beta : {0.25, 0.5, 1.0}) {
      for (int k : {0, 1}) {
        const KilbasSaigoParams p{alpha, 1.0 + beta / alpha, (beta + k) / alpha};
        for (double z : {-6.0, -1.5, 0.3, 2.0, 7.0}) {
          const double want = oracle::kilbas_saigo(p.alpha, p.b, p.c, z);
          EXPECT_LE(rel(kilbas_saigo(p, z), want), 1e-11) << alpha << ' ' << beta << ' ' << k << ' ' << z;
        }
      }
    }
  }
}

TEST(KilbasSaigo, GammaPoles) {
  // Numerator argument alpha (b j + c) + 1 = 0 at j = 0.
  EXPECT_THROW(kilbas_saigo({1.0, 1.0, -1.0}, 0.5), PoleError);
  // Denominator argument 0.5 (j - 2) + 1 = 0 at j = 0: every a_k, k >= 1, vanishes.
  EXPECT_EQ(kilbas_saigo({0.5, 1.0, -3.0}, 2.5), 1.0);
  EXPECT_THROW(kilbas_saigo({0.0, 1.0, 0.0}, 0.5), DomainError);
}

TEST(FoxWright, ZeroArgumentIsGammaRatio) {
  EXPECT_NEAR(fox_wright_psi11({2, 0.7, 1.5, 0.4}, 0.0), 1.1283791670955126, 1e-15);
}

TEST(FoxWright, ExponentialCase) {
  EXPECT_NEAR(fox_wright_psi11({1, 1, 1, 1}, 1.0), 2.718281828459045, 1e-15);
}

TEST(FoxWright, CollapsesToMittagLeffler) {
  EXPECT_NEAR(fox_wright_psi11({1, 1, 1, 0.8}, 0.5), mittag_leffler(0.8, 1, 0.5), 1e-15);
  const double rtol = SeriesControl{}.rtol;
  for (double beta_l : {0.5, 0.8, 1.0, 1.5}) {
    for (double b : {1.0, 2.0}) {
      for (double z : linspace(-5.0, 5.0, 41)) {
        const double want = mittag_leffler(beta_l, b, z);
        EXPECT_LE(std::fabs(fox_wright_psi11({1, 1, b, beta_l}, z) - want), 10 * rtol * std::fabs(want))
            << beta_l << ' ' << b << ' ' << z;
      }
    }
  }
}

TEST(FoxWright, MatchesMpfrSeries) {
  struct P {
    double a, A, b, B;
  };
  for (const P p : {P{1, 1, 1.9, 0.5}, P{3, 1, 2.7, 0.9}, P{0.5, 0.3, 1.2, 0.6}, P{2, 1, 3.5, 1.5}}) {
    for (double z : {-4.0, -0.5, 0.8, 3.0}) {
      const double want = oracle::fox_wright(p.a, p.A, p.b, p.B, z);
      EXPECT_LE(rel(fox_wright_psi11({p.a, p.A, p.b, p.B}, z), want), 1e-11) << p.a << ' ' << z;
    }
  }
}

TEST(FoxWright, PolesAndDivergence) {
  EXPECT_THROW(fox_wright_psi11({0.0, 1, 1, 1}, 0.5), PoleError);
  // 1/Gamma(0) = 0 drops the k = 0 term: sum_{k>=1} k z^k / k! = z e^z.
  EXPECT_NEAR(fox_wright_psi11({1, 1, 0, 1}, 0.7), 0.7 * std::exp(0.7), 1e-14);
  EXPECT_THROW(fox_wright_psi11({1, 2, 1, 0.5}, 0.5), DomainError);
  EXPECT_THROW(fox_wright_psi11({1, -1, 1, 0.5}, 0.5), DomainError);
}
