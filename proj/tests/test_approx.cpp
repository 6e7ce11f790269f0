#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gaussdense/approx.hpp"
#include "gaussdense/error.hpp"
#include "oracles.hpp"

using namespace gaussdense;

namespace {

const Grid kGrid = Grid::make(16.0, 1.0 / 64);

SpacePair flat() { return SpacePair::make(WeightSpec::constant(1.0), WeightSpec::constant(1.0), kGrid); }
SpacePair sobolev() { return SpacePair::make(WeightSpec::constant(1.0), WeightSpec::sobolev_omega(1), kGrid); }

Signal combo(const std::vector<std::pair<double, GaussianAtom>>& terms) {
  Signal s(kGrid);
  for (const auto& [c, a] : terms) {
    const Signal g = atom_signal(a, kGrid);
    for (std::size_t k = 0; k < kGrid.count(); ++k) s.values[k] += c * g.values[k];
  }
  return s;
}

Signal bump() {
  return sample<TimeDomain>(kGrid, [](double t) { return std::abs(t) < 1 ? cplx(std::pow(1 - t * t, 2)) : cplx(0.0); });
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

std::vector<GaussianAtom> grid_atoms(const std::vector<double>& alphas, const std::vector<double>& taus) {
  std::vector<GaussianAtom> out;
  for (double a : alphas)
    for (double t : taus) out.push_back({a, t});
  return out;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("Gram matrix") {
  const GramReport one = gram_matrix(Dictionary::gaussians({{1, 0}}, flat()));
  CHECK(one.matrix.rows() == 1);
  CHECK(one.matrix(0, 0).real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  const GramReport dup = gram_matrix(Dictionary::gaussians({{1, 0}, {1, 0}}, flat()));
  CHECK(dup.singular);
  CHECK(dup.min_eigenvalue < 1e-10);

  const auto atoms = grid_atoms({0.5, 1, 3}, {-2, 0, 0.5, 2});
  const GramReport g = gram_matrix(Dictionary::gaussians(atoms, flat()));
  for (Eigen::Index i = 0; i < g.matrix.rows(); ++i) {
    CHECK(g.matrix(i, i).real() == doctest::Approx(std::sqrt(2 * atoms[i].alpha)).epsilon(1e-10));
    for (Eigen::Index j = 0; j < g.matrix.cols(); ++j) CHECK(std::abs(g.matrix(i, j) - std::conj(g.matrix(j, i))) < 1e-14);
  }
  CHECK(g.min_eigenvalue > -1e-10);
  // Entries are H inner products.
  const SpacePair sp = sobolev();
  const GramReport s = gram_matrix(Dictionary::gaussians(atoms, sp));
  const cplx direct = h_inner(atom_signal(atoms[1], kGrid), atom_signal(atoms[7], kGrid), sp);
  CHECK(std::abs(s.matrix(1, 7) - direct) < 1e-9 * std::abs(direct));
}

TEST_CASE("least squares recovers exact combinations") {
  SUBCASE("single atom") {
    const ApproxReport r = least_squares_fit(atom_signal({4, 0.5}, kGrid), Dictionary::gaussians(grid_atoms({1, 4}, {0, 0.5}), flat()));
    CHECK(r.residual_h_norm < 1e-8);
    CHECK(std::abs(r.coefficients[3] - 1.0) < 1e-6);
  }
  SUBCASE("two atoms") {
    const Signal f = combo({{2, {1, -1}}, {3, {9, 1}}});
    const ApproxReport r = least_squares_fit(f, Dictionary::gaussians({{1, -1}, {9, 1}, {4, 0}}, sobolev()));
    CHECK(r.residual_h_norm < 1e-6);
    CHECK(std::abs(r.coefficients[0] - 2.0) < 1e-6);
    CHECK(std::abs(r.coefficients[1] - 3.0) < 1e-6);
    CHECK(std::abs(r.coefficients[2]) < 1e-6);
  }
}

TEST_CASE("bump function is approximated to one percent") {
  const SpacePair sp = sobolev();
  const Signal f = bump();
  const auto atoms = grid_atoms({2, 4, 8, 16, 32, 64, 128}, linspace(-1, 1, 9));
  REQUIRE(atoms.size() == 63);
  const ApproxReport r = least_squares_fit(f, Dictionary::gaussians(atoms, sp));
  CHECK(r.residual_h_norm < 0.01 * std::sqrt(h_norm_sq(f, sp)));
  CHECK(r.ridge > 0.0);
  CHECK(r.gram_condition > 1.0);
}

TEST_CASE("least squares properties") {
  const SpacePair sp = sobolev();
  const Signal f = sample<TimeDomain>(kGrid, [](double t) { return cplx(std::exp(-std::abs(t)) * std::cos(3 * t), 0.2 * t * std::exp(-t * t)); });
  const double fn = std::sqrt(h_norm_sq(f, sp));
  const auto small = grid_atoms({0.5, 2, 8}, {-1, 0, 1});
  const Dictionary d = Dictionary::gaussians(small, sp);
  const ApproxReport r = least_squares_fit(f, d, 0.0);
  // Residual orthogonal to every atom.
  Signal res = f;
  for (std::size_t i = 0; i < small.size(); ++i) {
    const Signal g = atom_signal(small[i], kGrid);
    for (std::size_t k = 0; k < kGrid.count(); ++k) res.values[k] -= r.coefficients[i] * g.values[k];
  }
  for (const GaussianAtom& a : small) CHECK(std::abs(h_inner(res, atom_signal(a, kGrid), sp)) < 1e-8 * fn);
  CHECK(r.residual_h_norm == doctest::Approx(std::sqrt(h_norm_sq(res, sp))).epsilon(1e-6));

  // Enlarging the dictionary never hurts.
  auto big = small;
  for (const GaussianAtom& a : grid_atoms({1, 4}, {-0.5, 0.5})) big.push_back(a);
  const ApproxReport rb = least_squares_fit(f, Dictionary::gaussians(big, sp), 0.0);
  CHECK(rb.residual_h_norm <= r.residual_h_norm + 1e-10);

  CHECK(code_of([&] { least_squares_fit(f, Dictionary::gaussians({{1, 0}, {1, 0}}, sp), 0.0); }) == ErrorCode::SingularGram);
  CHECK(code_of([&] { least_squares_fit(f, d, -1.0); }) == ErrorCode::InvalidArgument);
  CHECK_NOTHROW(least_squares_fit(f, Dictionary::gaussians({{1, 0}, {1, 0}}, sp)));
  CHECK(code_of([&] { Dictionary::gaussians({}, sp); }) == ErrorCode::EmptyFamily);
}

TEST_CASE("greedy pursuit") {
  const SpacePair sp = flat();
  const std::vector<double> alphas{0.5, 1, 2}, taus{-2, -1, 0, 1, 2};
  SUBCASE("single atom target") {
    const ApproxReport r = greedy_pursuit(atom_signal({1, 0}, kGrid), sp, alphas, taus, 3);
    REQUIRE(!r.atoms.empty());
    CHECK(r.atoms[0] == GaussianAtom{1, 0});
    CHECK(r.residual_trace[0] < 1e-8);
  }
  SUBCASE("symmetric pair and tie-break") {
    const Signal f = combo({{1, {1, -1}}, {1, {1, 1}}});
    const ApproxReport r = greedy_pursuit(f, sp, alphas, taus, 2);
    REQUIRE(r.atoms.size() == 2);
    CHECK(r.atoms[0] == GaussianAtom{1, -1});  // tied with tau = +1
    CHECK(r.atoms[1] == GaussianAtom{1, 1});
    CHECK(r.residual_h_norm < 1e-6);
    const ApproxReport ls = least_squares_fit(f, Dictionary::gaussians(r.atoms, sp), 0.0);
    CHECK(r.residual_h_norm == doctest::Approx(ls.residual_h_norm).epsilon(1e-3));
  }
  SUBCASE("trace and refit optimality") {
    const SpacePair s = sobolev();
    const Signal f = bump();
    const ApproxReport r = greedy_pursuit(f, s, {2, 4, 8, 16, 32}, linspace(-1, 1, 9), 8);
    CHECK(r.residual_trace.size() == 8);
    for (std::size_t i = 1; i < r.residual_trace.size(); ++i) CHECK(r.residual_trace[i] <= r.residual_trace[i - 1]);
    const ApproxReport ls = least_squares_fit(f, Dictionary::gaussians(r.atoms, s), 0.0);
    CHECK(r.residual_h_norm >= ls.residual_h_norm * (1 - 1e-9));
    const ApproxReport threaded = greedy_pursuit(f, s, {2, 4, 8, 16, 32}, linspace(-1, 1, 9), 8, 4);
    CHECK(threaded.atoms == r.atoms);
    CHECK(threaded.residual_trace == r.residual_trace);
  }
  SUBCASE("errors") {
    const Signal f = atom_signal({1, 0}, kGrid);
    CHECK(code_of([&] { greedy_pursuit(f, sp, {}, taus, 2); }) == ErrorCode::EmptyFamily);
    CHECK(code_of([&] { greedy_pursuit(f, sp, alphas, taus, 0); }) == ErrorCode::InvalidArgument);
    // Nothing correlates with a target orthogonal to every candidate.
    const Signal odd = sample<TimeDomain>(kGrid, [](double t) { return cplx(t * std::exp(-oracle::pi * t * t)); });
    CHECK(code_of([&] { greedy_pursuit(odd, sp, {1}, {0}, 1); }) == ErrorCode::StagnatedPursuit);
  }
}

TEST_CASE("window-generated dictionary") {
  const SpacePair sp = flat();
  const WindowSpec w = make_window(atom_signal({1, 0}, kGrid));
  // g(a (t - tau)) for the unit Gaussian is g_{a^2, tau} / a.
  const Dictionary d = Dictionary::from_window(w, {{2, 0.5}}, sp);
  const Signal ref = atom_signal({4, 0.5}, kGrid);
  double err = 0.0;
  for (std::size_t k = 0; k < kGrid.count(); ++k) err = std::max(err, std::abs(d.elements()[0].time.values[k] - ref.values[k] / 2.0));
  CHECK(err < 2e-3);
  const ApproxReport r = least_squares_fit(ref, Dictionary::from_window(w, grid_atoms({1, 2}, {0, 0.5}), sp));
  CHECK(r.residual_h_norm < 1e-2 * std::sqrt(h_norm_sq(ref, sp)));
}

TEST_CASE("completeness witness") {
  SUBCASE("flat weights") {
    const WitnessCurves w = completeness_witness(atom_signal({1, 0}, kGrid), flat(), {1, 4, 16, 64, 256});
    CHECK(w.target1 == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(w.target2 == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
    for (std::size_t i = 0; i < w.alphas.size(); ++i) {
      CHECK(w.term1[i].real() < w.target1);
      CHECK(std::abs(w.term1[i].imag()) < 1e-14);
      if (i > 0) {
        CHECK(w.term1[i].real() > w.term1[i - 1].real());
        CHECK(w.term2[i].real() > w.term2[i - 1].real());
      }
    }
    // <f, I M f> for f = e^{-pi t^2}: sqrt(a / (a + c)) / sqrt(1 + b), c = 1 + 1/a, b = a c / (a + c).
    for (std::size_t i = 0; i < w.alphas.size(); ++i) {
      const double a = w.alphas[i], c = 1 + 1 / a, b = a * c / (a + c);
      CHECK(w.term1[i].real() == doctest::Approx(std::sqrt(a / (a + c)) / std::sqrt(1 + b)).epsilon(1e-9));
    }
    CHECK(w.i_alpha.size() == 5);
    CHECK(w.i_alpha[0] == doctest::Approx(2.0));
  }
  SUBCASE("Sobolev targets") {
    const WitnessCurves w = completeness_witness(atom_signal({1, 0}, kGrid), sobolev(), {1, 16, 256});
    CHECK(w.target1 == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(w.target2 == doctest::Approx(oracle::pi / std::sqrt(2.0)).epsilon(1e-9));
  }
  SUBCASE("zero target") {
    const WitnessCurves w = completeness_witness(Signal(kGrid), flat(), {1, 4});
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(w.term1[i] == cplx(0.0));
      CHECK(w.term2[i] == cplx(0.0));
    }
    CHECK(w.target1 == 0.0);
  }
  SUBCASE("errors") {
    CHECK(code_of([] { completeness_witness(atom_signal({1, 0}, kGrid), flat(), {4, 1}); }) == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("both integration orders agree") {
  const Grid g = Grid::make(8.0, 1.0 / 32);
  const SpacePair sp = SpacePair::make(WeightSpec::exp_abs(0.3), WeightSpec::sobolev_omega(1), g);
  const Signal f = atom_signal({1, 0.25}, g);
  for (double alpha : {1.0, 4.0}) {
    const FubiniCheck c = fubini_check(f, sp, alpha);
    CHECK(std::abs(c.time_first - c.tau_first) <= 1e-12 * std::abs(c.operator_form));
    CHECK(c.max_relative_gap < 1e-6);
  }
  CHECK(fubini_check(Signal(g), sp, 2.0).max_relative_gap == 0.0);
}
