#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gaussdense/atoms.hpp"
#include "gaussdense/error.hpp"
#include "gaussdense/transform.hpp"
#include "oracles.hpp"

using namespace gaussdense;

namespace {

const Grid kGrid = Grid::make(16.0, 1.0 / 64);

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

std::size_t index_of(const Grid& g, double x) { return static_cast<std::size_t>(std::llround((x + g.halfwidth()) / g.step())); }

}  // namespace

TEST_CASE("atom samples") {
  const Signal a = atom_signal({1, 0}, kGrid);
  CHECK(a.values[index_of(kGrid, 0.0)].real() == 1.0);
  CHECK(atom_signal({4, 0}, kGrid).values[index_of(kGrid, 0.0)].real() == 2.0);
  for (double alpha : {0.25, 1.0, 4.0, 16.0, 64.0}) {
    const Signal s = atom_signal({alpha, 0.5}, kGrid);
    double mass = 0.0;
    for (cplx z : s.values) {
      CHECK(z.real() >= 0.0);
      mass += z.real();
    }
    CHECK(std::abs(mass * kGrid.step() - 1.0) < 1e-10);
  }
  const Signal far = atom_signal({1, 3}, kGrid);
  for (std::size_t k = 0; k < kGrid.count(); ++k) {
    CHECK(far.values[k].real() >= 0.0);
    if (std::abs(kGrid.point(k) - 3) < 10) CHECK(far.values[k].real() > 0.0);  // beyond this exp underflows
  }
}

TEST_CASE("atom validation") {
  CHECK(code_of([] { validate_atom({0.0, 0.0}, kGrid); }) == ErrorCode::AtomOutOfDomain);
  CHECK(code_of([] { validate_atom({1.0, 17.0}, kGrid); }) == ErrorCode::AtomOutOfDomain);
  CHECK(code_of([] { validate_atom({1.0, 15.0}, kGrid); }) == ErrorCode::AtomOutOfDomain);
  CHECK_NOTHROW(validate_atom({1.0, 13.0}, kGrid));
  // Mass outside [-L, L] against direct integration of the tails.
  const GaussianAtom a{0.05, 4.0};
  const double tail = oracle::simpson([&](double t) { return oracle::gauss(a.alpha, a.tau, t); }, 16.0, 80.0, 200000) +
                      oracle::simpson([&](double t) { return oracle::gauss(a.alpha, a.tau, t); }, -80.0, -16.0, 200000);
  CHECK(atom_outside_mass(a, 16.0) == doctest::Approx(tail).epsilon(1e-8));
}

TEST_CASE("closed-form spectra") {
  const Grid w = kGrid.dual();
  const Spectrum s = atom_spectrum({1, 0}, kGrid);
  CHECK(s.values[index_of(w, 0.0)] == cplx(1.0, 0.0));
  const cplx v = atom_spectrum({1, 0.5}, kGrid).values[index_of(w, 1.0)];
  CHECK(v.real() == doctest::Approx(-std::exp(-oracle::pi)).epsilon(1e-12));
  CHECK(std::abs(v.imag()) < 1e-15);
  const Spectrum t = atom_spectrum({2.5, -0.75}, kGrid);
  for (std::size_t m = 1; m < w.count(); ++m)
    CHECK(std::abs(t.values[m]) == doctest::Approx(std::abs(t.values[w.count() - m])).epsilon(1e-14));
  for (double alpha : {0.25, 1.0, 4.0, 16.0})
    for (double tau : {-1.0, 0.0, 1.0}) {
      const Spectrum fft = forward_ft(atom_signal({alpha, tau}, kGrid));
      CHECK(oracle::max_abs_diff(fft.values, atom_spectrum({alpha, tau}, kGrid).values) < 1e-10);
    }
}

TEST_CASE("Schur bound of the Laplace kernel") {
  const Grid g = Grid::make(16.0, 1.0 / 64);
  const SchurKernel k = make_schur_kernel(g, g, [](double t, double tau) { return std::exp(-std::abs(t - tau)); });
  // Brute-force maximal row sum.
  double best = 0.0;
  for (std::size_t i = 0; i < g.count(); i += 97) {
    double s = 0.0;
    for (std::size_t j = 0; j < g.count(); ++j) s += std::exp(-std::abs(g.point(i) - g.point(j)));
    best = std::max(best, s * g.step());
  }
  CHECK(k.n_inf >= best);
  CHECK(std::abs(schur_bound(k) - 2.0) <= 2 * g.step());
  CHECK(k.n1 == doctest::Approx(k.n_inf).epsilon(1e-12));

  const SchurKernel zero = make_schur_kernel(g, g, [](double, double) { return 0.0; });
  CHECK(schur_bound(zero) == 0.0);

  const SchurKernel inf = make_schur_kernel(g, g, [](double, double) { return 1e305; });
  CHECK(code_of([&] { schur_bound(inf); }) == ErrorCode::InfiniteBound);
}

TEST_CASE("Schur bound dominates the bilinear form") {
  const Grid g = Grid::make(8.0, 1.0 / 16);
  const Grid w = g.dual();
  struct Case {
    Grid rows, cols;
    std::function<double(double, double)> fn;
  };
  const std::vector<Case> cases{
      {g, g, [](double t, double tau) { return kernel_time(1.0, 0.0, 1.0, t, tau); }},
      {g, g, [](double t, double tau) { return kernel_time(2.0, 0.4, 4.0, t, tau); }},
      {w, g, [](double om, double tau) { return kernel_frequency(1.5, 0.2, 1.0, om, tau); }},
  };
  for (const auto& c : cases) {
    const SchurKernel k = make_schur_kernel(c.rows, c.cols, c.fn);
    const double b = schur_bound(k);
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto f = oracle::random_signal(c.rows.count(), 100 + s);
      const auto h = oracle::random_signal(c.cols.count(), 200 + s);
      const double nf = weighted_l2_norm(c.rows, f), nh = weighted_l2_norm(c.cols, h);
      CHECK(schur_bilinear(k, f, h) <= b * nf * nh * (1 + 1e-12));
    }
  }
  const SchurKernel kt = make_schur_kernel(g, g, [](double t, double tau) { return kernel_time(1.0, 0.0, 1.0, t, tau); });
  CHECK(schur_bound(kt) <= 1.0 + 1e-12);
}

TEST_CASE("closed-form kernel bounds") {
  const double c = 1.7, mu = 0.6;
  for (double alpha : {0.5, 1.0, 4.0}) {
    const double i_oracle = c * std::sqrt(alpha) * std::exp(mu * mu * alpha / (4 * oracle::pi)) *
                            oracle::simpson([&](double x) { return std::exp(-oracle::pi * alpha * x * x + mu * std::abs(x)); }, -40, 40, 400000);
    CHECK(schur_i(c, mu, alpha) == doctest::Approx(i_oracle).epsilon(1e-9));
    const double i1_oracle = c * oracle::simpson([&](double x) { return std::exp(-oracle::pi / alpha * x * x + mu * std::abs(x)); }, -200, 200, 400000);
    CHECK(schur_i1(c, mu, alpha) == doctest::Approx(i1_oracle).epsilon(1e-9));
    const double iinf_oracle = c * std::exp(mu * mu * alpha / (4 * oracle::pi)) *
                               oracle::simpson([&](double x) { return std::exp(-oracle::pi / alpha * x * x); }, -200, 200, 400000);
    CHECK(schur_iinf(c, mu, alpha) == doctest::Approx(iinf_oracle).epsilon(1e-9));

    // Sampled row and column integrals stay below the closed forms.
    const Grid g = Grid::make(16.0, 1.0 / 16);
    const SchurKernel kt = make_schur_kernel(g, g, [&](double t, double tau) { return kernel_time(c, mu, alpha, t, tau); });
    CHECK(kt.n1 <= schur_i(c, mu, alpha) * (1 + 1e-6));
    CHECK(kt.n_inf <= schur_i(c, mu, alpha) * (1 + 1e-6));
    const SchurKernel ko = make_schur_kernel(g.dual(), g, [&](double om, double tau) { return kernel_frequency(c, mu, alpha, om, tau); });
    CHECK(ko.n1 <= schur_i1(c, mu, alpha) * (1 + 1e-6));
    CHECK(ko.n_inf <= schur_iinf(c, mu, alpha) * (1 + 1e-6));
  }
}

TEST_CASE("window conditions") {
  const SpacePair flat = SpacePair::make(WeightSpec::constant(1.0), WeightSpec::constant(1.0), kGrid);
  SUBCASE("Gaussian window passes") {
    const WindowReport r = check_window(make_window(atom_signal({1, 0}, kGrid)), flat);
    CHECK(r.all_passed());
    CHECK(r.tail_t.size() == 4);
    for (std::size_t i = 1; i < r.tail_t.size(); ++i) CHECK(r.tail_t[i] <= r.tail_t[i - 1]);
    // With M == 1 the tail is the Gaussian tail erfc(sqrt(pi) delta) at alpha = 1, less the
    // Euler-Maclaurin endpoint terms of the open-interval sum.
    const double h = kGrid.step();
    const double f = std::exp(-oracle::pi / 4);
    const double expected = std::erfc(std::sqrt(oracle::pi) * 0.5) - h * f + h * h / 6 * oracle::pi * f;
    CHECK(r.tail_t[0] == doctest::Approx(expected).epsilon(1e-7));
  }
  SUBCASE("half-mass window fails the unit-mass condition") {
    Signal g = atom_signal({1, 0}, kGrid);
    for (auto& z : g.values) z *= 0.5;
    const WindowReport r = check_window(make_window(g), flat);
    CHECK_FALSE(r[WindowCondition::UnitMass].passed);
    CHECK(r[WindowCondition::UnitMass].margin == doctest::Approx(0.5));
  }
  SUBCASE("slowly decaying spectrum against an exponential frequency weight") {
    // g(t) = pi e^{-2 pi |t|} has spectrum 1 / (1 + w^2).
    // Frequency window [-8, 8] keeps e^{|w|} below the blowup threshold.
    const Grid grid = Grid::make(16.0, 1.0 / 16);
    const Signal g = sample<TimeDomain>(grid, [](double t) { return cplx(oracle::pi * std::exp(-2 * oracle::pi * std::abs(t))); });
    const SpacePair sp = SpacePair::make(WeightSpec::constant(1.0), WeightSpec::exp_abs(1.0), grid);
    REQUIRE(sp.hypotheses_hold());
    const WindowReport r = check_window(make_window(g), sp);
    CHECK_FALSE(r[WindowCondition::FrequencyKernelIntegral].passed);
    CHECK(r[WindowCondition::TimeKernelIntegral].passed);
  }
  SUBCASE("argument checks") {
    const WindowSpec w = make_window(atom_signal({1, 0}, kGrid));
    CHECK(code_of([&] { check_window(w, flat, {4, 1}); }) == ErrorCode::InvalidArgument);
    const SpacePair other = SpacePair::make(WeightSpec::constant(1.0), WeightSpec::constant(1.0), Grid::make(8.0, 1.0 / 64));
    CHECK(code_of([&] { check_window(w, other); }) == ErrorCode::GridMismatch);
  }
}
