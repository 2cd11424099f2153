#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <variant>

#include "critdamp/errors.hpp"
#include "critdamp/functionals.hpp"
#include "oracles.hpp"

using namespace critdamp;
using namespace critdamp::functionals;
using radial::RadialGrid;

namespace {

constexpr double kPi = std::numbers::pi;

double bump(double r, double M) {
  double z = r / M;
  return z < 1.0 ? std::exp(-1.0 / (1.0 - z * z)) : 0.0;
}

RadialState constant_state(double rho_bar, std::size_t n = 64, double r_max = 4.0) {
  RadialGrid grid(r_max, n);
  return radial::state_from_cells(grid, rho_bar, 0.0, std::vector<double>(n, rho_bar),
                                  std::vector<double>(n, 0.0));
}

InitialProfile zero_profile() {
  return {"zero", [](double) { return 0.0; }, [](double) { return 0.0; }, 1.0, 1.0, 0.0};
}

// Runs the outgoing shell and keeps snapshots every `cadence`.
radial::RunResult shell_run(std::size_t n, double t_end, double cadence, double M0 = 0.5,
                            double M = 1.5) {
  GasModel g(1.4, 1.0);
  DampingLaw d(1.0, 1.0);
  RadialGrid grid(M + 1.5 * t_end + 1.0, n);
  radial::RunOptions o;
  o.t_end = t_end;
  o.monitor_cadence = cadence;
  o.snapshot_cadence = cadence;
  return radial::run(g, d, radial::outgoing_shell_profile(0.2, M, M0, 1.0), grid, o, {});
}

}  // namespace

TEST(Q, VanishForZeroDataAndOutsideSupport) {
  GasModel g(1.4, 1.0);
  for (double l : {0.0, 0.3, 2.0}) {
    EXPECT_EQ(q0(zero_profile(), g, l), 0.0);
    EXPECT_EQ(q1(zero_profile(), g, l), 0.0);
  }
  auto prof = radial::outgoing_shell_profile(0.5, 2.0, 1.0, 1.0);
  EXPECT_EQ(q0(prof, g, 2.0), 0.0);
  EXPECT_EQ(q1(prof, g, 2.5), 0.0);
  EXPECT_THROW(q0(prof, g, -0.1), std::domain_error);
}

TEST(Q, Q0MatchesCompositeOracle) {
  GasModel g(1.4, 1.0);
  auto prof = radial::bump_profile(0.4, 1.3);
  for (double l : {0.0, 0.2, 0.9, 1.25}) {
    double ref =
        4 * kPi *
        oracle::simpson([&](double r) { return r * (r - l) * (r - l) * 0.4 * bump(r, 1.3); }, l,
                        1.3, 1000000);
    double v = q0(prof, g, l);
    EXPECT_GT(v, 0.0);
    EXPECT_NEAR(v, ref, 1e-8 * ref) << l;
  }
}

TEST(Q, Q1NonnegativeForOutgoingData) {
  GasModel g(1.4, 1.0);
  auto prof = radial::outgoing_shell_profile(0.7, 2.0, 0.5, 1.0);
  auto momentum = [&](double r) {
    double rho = 1.0 + 0.7 * prof.rho0(r);
    return rho * 0.7 * prof.u0(r);
  };
  for (double l = 0.0; l < 2.0; l += 0.05) {
    double v = q1(prof, g, l);
    EXPECT_GE(v, 0.0);
    double ref = 4 * kPi *
                 oracle::simpson([&](double r) { return (r * r - l * l) * momentum(r); }, l, 2.0,
                                 200000);
    EXPECT_NEAR(v, ref, 1e-9 * std::max(1.0, ref));
  }
  QHypothesisReport rep = check_q_hypotheses(prof, g, 256);
  EXPECT_TRUE(rep.holds);
  EXPECT_EQ(rep.samples, 256u);
  EXPECT_GT(rep.min_q0, 0.0);
  EXPECT_GE(rep.min_q1, 0.0);
}

TEST(Q, HypothesesFailForInwardData) {
  GasModel g(1.4, 1.0);
  auto prof = radial::outgoing_shell_profile(0.5, 2.0, 0.5, 1.0);
  auto u0 = prof.u0;
  prof.u0 = [u0](double r) { return -u0(r); };
  QHypothesisReport rep = check_q_hypotheses(prof, g, 64);
  EXPECT_FALSE(rep.holds);
  EXPECT_LT(rep.min_q1, 0.0);
}

TEST(P, VanishesOnConstantState) {
  RadialState s = constant_state(1.3);
  GasModel g(1.4, 1.3);
  DampingLaw d(1.0, 1.0);
  for (double l : {0.1, 1.0, 3.9}) {
    EXPECT_EQ(P(s, l), 0.0);
    EXPECT_EQ(G(g, s, l), 0.0);
  }
  EXPECT_EQ(H(s), 0.0);
  EXPECT_EQ(L(s), 0.0);
  EXPECT_EQ(pressure_work(g, s), 0.0);
  EXPECT_EQ(energy_E0(g, d, s), 0.0);
  for (double phi : velocity_potential(s)) EXPECT_EQ(phi, 0.0);
}

TEST(P, MatchesQ0AtInitialTimeWithSecondOrderError) {
  GasModel g(1.4, 1.0);
  auto prof = radial::outgoing_shell_profile(0.3, 1.5, 0.5, 1.0);
  std::vector<double> errs;
  for (std::size_t n : {100u, 200u, 400u}) {
    RadialState s = radial::init_state(g, prof, RadialGrid(3.0, n));
    double e = 0.0;
    for (double l = 0.5; l < 1.5; l += 0.0371) e = std::max(e, std::fabs(P(s, l) - q0(prof, g, l)));
    errs.push_back(e);
  }
  EXPECT_LT(errs[0], 1e-3);
  EXPECT_GT(errs[0] / errs[1], 1.8);
  EXPECT_GT(errs[1] / errs[2], 1.8);
}

TEST(P, TimeDerivativeMatchesQ1) {
  GasModel g(1.4, 1.0);
  DampingLaw d(1.0, 1.0);
  auto prof = radial::outgoing_shell_profile(0.3, 1.5, 0.5, 1.0);
  std::vector<double> errs;
  for (std::size_t n : {200u, 400u, 800u}) {
    RadialState s0 = radial::init_state(g, prof, RadialGrid(3.0, n));
    radial::StepResult r = radial::step(g, d, s0, 0.5);
    double e = 0.0;
    for (double l = 0.55; l < 1.5; l += 0.0371) {
      double dP = (P(r.state, l) - P(s0, l)) / r.dt;
      e = std::max(e, std::fabs(dP - q1(prof, g, l)));
    }
    errs.push_back(e);
  }
  EXPECT_GT(errs[0] / errs[1], 1.8);
  EXPECT_GT(errs[1] / errs[2], 1.8);
}

TEST(P, RequiresNonnegativeRadius) {
  RadialState s = constant_state(1.0);
  EXPECT_THROW(P(s, -1.0), std::domain_error);
}

TEST(G, NonnegativeAndExactForGammaTwo) {
  oracle::Rng rng(7);
  for (int k = 0; k < 30; ++k) {
    double gamma = k % 3 == 0 ? 2.0 : rng.uniform(1.1, 3.0);
    double rb = rng.log_uniform(0.5, 2.0);
    GasModel g(gamma, rb);
    std::size_t n = 64;
    RadialGrid grid(3.0, n);
    std::vector<double> rho(n), mom(n, 0.0);
    for (auto& v : rho) v = rb * rng.log_uniform(0.05, 20.0);
    RadialState s = radial::state_from_cells(grid, rb, 0.0, rho, mom);
    for (double l : {0.01, 0.7, 1.33, 2.9}) {
      double v = G(g, s, l);
      EXPECT_GE(v, 0.0);
      if (gamma == 2.0) {
        double ref = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          double a = std::max(grid.face(i), l), b = grid.face(i + 1);
          if (b <= a) continue;
          double dr = rho[i] - rb;
          ref += g.pressure_constant() * dr * dr * (b * b - a * a) / 2.0;
        }
        ref *= 8 * kPi;
        EXPECT_NEAR(v, ref, 1e-12 * ref);
      }
    }
  }
}

TEST(HL, Examples) {
  GasModel g(1.4, 1.0);
  RadialGrid grid(4.0, 200);
  RadialState s = radial::init_state(g, radial::bump_profile(0.3, 1.0), grid);
  EXPECT_EQ(H(s), 0.0);  // u0 = 0
  double ref = 4 * kPi *
               oracle::simpson([](double r) { return r * r * 0.3 * bump(r, 1.0); }, 0.0, 1.0,
                               1000000);
  EXPECT_NEAR(L(s), ref, 1e-8);
  auto out = radial::init_state(g, radial::outgoing_shell_profile(0.3, 1.5, 0.5, 1.0), grid);
  EXPECT_GT(H(out), 0.0);
}

TEST(Alpha, ClosedForm) {
  GasModel g(1.4, 1.0);
  EXPECT_NEAR(alpha(0.0, 1.0, 0.0, g), 4 * kPi * kPi / 3.0, 1e-14);
  EXPECT_NEAR(alpha(0.0, 1.0, 0.0, g), 13.159472, 1e-6);
  GasModel h(2.0, 3.0);
  EXPECT_NEAR(alpha(1.0, 2.0, 5.0, h), 9.0 * (5.0 + 4 * kPi * kPi * 3.0 / 3.0 * 27.0), 1e-9);
}

TEST(Criterion, ZeroMomentumNeverSatisfied) {
  GasModel g(1.4, 1.0);
  DampingLaw d(1.0, 1.0);
  for (double T : {0.1, 10.0, 1e6}) {
    EXPECT_FALSE(blowup_criterion(0.0, 0.0, 1.0, d, g, T).satisfied);
  }
  EXPECT_FALSE(find_T_star(0.0, 0.0, 1.0, d, g).has_value());
}

TEST(Criterion, Errors) {
  GasModel g(1.4, 1.0);
  DampingLaw d(1.0, 1.0);
  EXPECT_THROW(blowup_criterion(1.0, -1e-3, 1.0, d, g, 1.0), HypothesisError);
  EXPECT_THROW(blowup_criterion(1.0, 0.0, 1.0, d, g, 0.0), std::domain_error);
}

TEST(Criterion, IntegralMatchesCompositeOracle) {
  GasModel g(1.4, 1.0);
  DampingLaw d(1.0, 0.0);
  auto f = [](double tau) {
    double a = (tau + 1.0) * (tau + 1.0) * (4 * kPi * kPi / 3.0) * std::pow(tau + 1.0, 3);
    return std::exp(-tau) / a;
  };
  double ref = oracle::simpson(f, 0.0, 10.0, 10000000);
  EXPECT_NEAR(criterion_integral(0.0, 1.0, d, g, 10.0), ref, 1e-9 * ref);
}

TEST(Criterion, ClosedFormBetaMatchesGenericPath) {
  GasModel g(1.4, 1.3);
  for (auto [mu, lambda] : {std::pair{1.0, 0.0}, std::pair{2.0, 1.0}, std::pair{0.5, 1.0}}) {
    DampingLaw d(mu, lambda);
    auto beta = [&](double t) {
      return lambda == 0.0 ? std::exp(mu * t) : std::pow(1.0 + t, mu);
    };
    for (double T : {0.5, 5.0, 50.0}) {
      double ref = oracle::simpson(
          [&](double t) { return 1.0 / (alpha(t, 1.2, 0.7, g) * beta(t)); }, 0.0, T, 2000000);
      EXPECT_NEAR(criterion_integral(0.7, 1.2, d, g, T), ref, 1e-10 * ref);
    }
  }
}

TEST(Criterion, MonotoneInHorizonAndMomentum) {
  GasModel g(1.4, 1.0);
  DampingLaw d(0.1, 2.0);
  oracle::Rng rng(13);
  for (int k = 0; k < 200; ++k) {
    double H0 = rng.log_uniform(1.0, 1e3);
    double T1 = rng.log_uniform(0.01, 10.0);
    double T2 = T1 * (1.0 + rng.uniform(0.0, 2.0));
    auto a = blowup_criterion(H0, 1.0, 1.0, d, g, T1);
    auto b = blowup_criterion(H0, 1.0, 1.0, d, g, T2);
    auto c = blowup_criterion(H0 * 1.5, 1.0, 1.0, d, g, T1);
    EXPECT_EQ(a.satisfied, H0 * a.integral_value > 1.0);
    if (a.satisfied) {
      EXPECT_TRUE(b.satisfied);
      EXPECT_TRUE(c.satisfied);
    }
  }
}

TEST(Criterion, FindTStar) {
  GasModel g(1.4, 1.0);
  DampingLaw d(0.1, 2.0);
  auto T = find_T_star(200.0, 10.0, 1.0, d, g);
  ASSERT_TRUE(T.has_value());
  EXPECT_TRUE(blowup_criterion(200.0, 10.0, 1.0, d, g, *T).satisfied);
  EXPECT_FALSE(blowup_criterion(200.0, 10.0, 1.0, d, g, *T * (1 - 1e-9)).satisfied);
  // Too little momentum: the integral over all time stays below 1 / H0.
  EXPECT_FALSE(find_T_star(1.0, 10.0, 1.0, d, g).has_value());
}

TEST(Potential, MatchesQuadratureAtInitialTime) {
  GasModel g(1.4, 1.0);
  auto prof = radial::outgoing_shell_profile(0.2, 1.5, 0.3, 1.0);
  RadialGrid grid(3.0, 3000);
  RadialState s = radial::init_state(g, prof, grid);
  auto phi = velocity_potential(s);
  for (std::size_t i = 0; i < grid.n_cells(); i += 97) {
    double r = grid.center(i);
    double ref = -0.2 * oracle::simpson(prof.u0, r, 1.5, 100000);
    EXPECT_NEAR(phi[i], ref, 1e-6) << r;
  }
}

TEST(Energy, QuadraticInAmplitude) {
  GasModel g(1.4, 1.0);
  DampingLaw d(1.0, 1.0);
  RadialGrid grid(3.0, 400);
  for (int which = 0; which < 2; ++which) {
    auto make = [&](double eps) {
      return which == 0 ? radial::bump_profile(eps, 1.0)
                        : radial::outgoing_shell_profile(eps, 1.5, 0.5, 1.0);
    };
    double e1 = energy_E0(g, d, radial::init_state(g, make(1e-3), grid));
    double e2 = energy_E0(g, d, radial::init_state(g, make(2e-3), grid));
    EXPECT_GT(e1, 0.0);
    EXPECT_NEAR(e2 / e1, 4.0, 0.2);
  }
}

TEST(F, IdentitiesOnShellRun) {
  auto run = shell_run(400, 1.0, 0.05);
  std::vector<PSlice> slices;
  for (const auto& s : run.snapshots) slices.push_back(sample_P(s, 0.5, 1.5, 64));
  ASSERT_EQ(slices.size(), 21u);
  FSeries f = compute_F(slices);
  auto F = f.F.values();
  auto inner = f.inner.values();
  EXPECT_EQ(F[0], 0.0);
  EXPECT_NEAR((F[1] - F[0]) / 0.05, 0.0, 0.05 * std::fabs(inner[0]) + 1e-15);
  FunctionalSeries d2 = F_second_difference(f.F);
  ASSERT_EQ(d2.samples.size(), F.size() - 2);
  for (std::size_t k = 0; k < d2.samples.size(); ++k) {
    EXPECT_NEAR(d2.samples[k].second, inner[k + 1], 1e-9 * std::fabs(inner[k + 1]));
  }
  for (const auto& sl : slices) {
    for (double v : sl.values) ASSERT_GE(v, 0.0);
  }
  for (std::size_t k = 1; k < F.size(); ++k) EXPECT_GE(F[k], F[k - 1]);
  for (const auto& [t, v] : d2.samples) EXPECT_GE(v, 0.0) << t;
}

TEST(F, InnerIntegralConvergesUnderLRefinement) {
  auto run = shell_run(400, 0.5, 0.25);
  const RadialState& s = run.snapshots.back();
  double t = s.t;
  double ref = oracle::simpson([&](double l) { return P(s, l) / l; }, t + 0.5, t + 1.5, 20000);
  std::vector<double> errs;
  for (std::size_t m : {16u, 32u, 64u}) {
    std::vector<PSlice> slices;
    for (const auto& snap : run.snapshots) slices.push_back(sample_P(snap, 0.5, 1.5, m));
    FSeries f = compute_F(slices);
    errs.push_back(std::fabs(f.inner.values().back() - ref));
  }
  EXPECT_GT(errs[0] / errs[1], 2.0);
  EXPECT_GT(errs[1] / errs[2], 2.0);
}

TEST(F, RejectsBadSlices) {
  auto run = shell_run(128, 0.5, 0.25);
  std::vector<PSlice> slices;
  for (const auto& s : run.snapshots) slices.push_back(sample_P(s, 0.5, 1.5, 8));
  std::vector<PSlice> two(slices.begin(), slices.begin() + 2);
  EXPECT_THROW(compute_F(two), ConfigError);
  std::vector<PSlice> late(slices.begin() + 1, slices.end());
  late.push_back(sample_P(run.snapshots.back(), 0.5, 1.5, 8));
  EXPECT_THROW(compute_F(late), ConfigError);
  std::vector<PSlice> at_zero;
  for (const auto& s : run.snapshots) at_zero.push_back(sample_P(s, 0.0, 1.5, 8));
  EXPECT_THROW(compute_F(at_zero), ConfigError);
}

TEST(PSign, HoldsOnOutgoingRun) {
  auto run = shell_run(400, 2.0, 0.25);
  PSignReport rep = check_P_sign(run.snapshots, 0.5, 1.5, 64);
  EXPECT_TRUE(rep.holds);
  EXPECT_GT(rep.tol_P, 0.0);
  EXPECT_GE(rep.min_value, -rep.tol_P);
}

TEST(PSign, DampedResidualNonnegativeUpToTimeStep) {
  GasModel g(1.4, 1.0);
  DampingLaw d(1.0, 1.0);
  std::vector<double> worst;
  for (double h : {0.1, 0.05}) {
    auto run = shell_run(800, 1.0, h);
    double w = 0.0;
    for (double l : {0.6, 0.9, 1.2}) {
      FunctionalSeries p{"P", {}};
      for (const auto& s : run.snapshots) p.push(s.t, P(s, l));
      for (double v : P_damped_residual(p, d).values()) w = std::min(w, v);
    }
    worst.push_back(w);
  }
  // Negative parts, if any, shrink with the time step.
  EXPECT_GE(worst[1], std::min(0.0, worst[0]) * 0.75);
}

TEST(HOde, ResidualsHaveOneEntryPerInterval) {
  DampingLaw d(1.0, 1.0);
  FunctionalSeries h{"H", {{0.0, 1.0}, {0.5, 2.0}, {1.0, 2.5}}};
  FunctionalSeries j{"J", {{0.0, 3.0}, {0.5, 0.0}, {1.0, 0.0}}};
  auto r = h_ode_residuals(h, j, d);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0], 2.0 + 1.0 - 3.0, 1e-15);
  EXPECT_NEAR(r[1], 1.0 + 2.0 / 1.5, 1e-15);
}
