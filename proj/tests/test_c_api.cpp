#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "gaussdense/gaussdense.h"

extern "C" int gd_c_header_check(void);

namespace {

constexpr double kL = 8.0, kH = 1.0 / 32;

struct Weight {
  gd_weight* p = nullptr;
  Weight(const char* kind, std::vector<double> params, double halfwidth) {
    REQUIRE(gd_weight_create(kind, params.data(), params.size(), halfwidth, &p) == GD_OK);
  }
  ~Weight() { gd_weight_destroy(p); }
};

struct Sig {
  gd_signal* p = nullptr;
  ~Sig() { gd_signal_destroy(p); }
};

struct Space {
  gd_space* p = nullptr;
  ~Space() { gd_space_destroy(p); }
};

}  // namespace

TEST_CASE("header compiles as C") { CHECK(gd_c_header_check() == 0); }

TEST_CASE("version and status names") {
  CHECK(std::string(gd_version()) == "1.0.0");
  CHECK(std::string(gd_status_name(GD_OK)) == "Ok");
  CHECK(std::string(gd_status_name(GD_SINGULAR_GRAM)) == "SingularGram");
  CHECK(std::string(gd_status_name(GD_INTERNAL_ERROR)) == "InternalError");
}

TEST_CASE("weights") {
  Weight w("exp-abs", {1.0}, kL);
  double v = 0;
  CHECK(gd_weight_eval(w.p, 2.0, &v) == GD_OK);
  CHECK(v == doctest::Approx(std::exp(2.0)));
  CHECK(gd_weight_eval(w.p, 9.0, &v) == GD_OUT_OF_DOMAIN);
  CHECK(std::strlen(gd_last_error()) > 0);

  double c = 0, mu = 0;
  int regular = 0;
  CHECK(gd_weight_envelope(w.p, kH, &c, &mu, &regular) == GD_OK);
  CHECK(regular == 1);
  CHECK(mu == doctest::Approx(1.0).epsilon(1e-6));

  double measure = 0;
  int passes = 0;
  CHECK(gd_weight_nondegenerate(w.p, 0.5, kH, &measure, &passes) == GD_OK);
  CHECK(passes == 1);

  gd_weight* bad = nullptr;
  CHECK(gd_weight_create("wobbly", nullptr, 0, kL, &bad) == GD_INVALID_ARGUMENT);
  CHECK(bad == nullptr);
  CHECK(gd_weight_create("constant", nullptr, 0, kL, nullptr) == GD_INVALID_ARGUMENT);

  const double xi[3] = {-1, 0, 1}, neg[3] = {1, -1, 1};
  CHECK(gd_weight_from_table(xi, neg, 3, &bad) == GD_NEGATIVE_WEIGHT);
  gd_weight_destroy(nullptr);
}

TEST_CASE("signals and transforms") {
  Sig g;
  REQUIRE(gd_signal_gaussian(kL, kH, 1.0, 0.5, &g.p) == GD_OK);
  const size_t n = gd_signal_count(g.p);
  CHECK(n == 512);
  double L = 0, h = 0;
  CHECK(gd_signal_grid(g.p, &L, &h) == GD_OK);
  CHECK(L == kL);
  CHECK(h == kH);

  Sig spec, back;
  REQUIRE(gd_forward_ft(g.p, &spec.p) == GD_OK);
  REQUIRE(gd_inverse_ft(spec.p, &back.p) == GD_OK);
  std::vector<double> re(n), im(n), re2(n), im2(n);
  CHECK(gd_signal_values(g.p, re.data(), im.data(), n) == GD_OK);
  CHECK(gd_signal_values(back.p, re2.data(), im2.data(), n) == GD_OK);
  double err = 0;
  for (size_t k = 0; k < n; ++k) err = std::max(err, std::hypot(re[k] - re2[k], im[k] - im2[k]));
  CHECK(err < 1e-12);
  CHECK(gd_signal_values(g.p, re.data(), im.data(), n - 1) == GD_INVALID_ARGUMENT);

  double gap = 1;
  CHECK(gd_parseval_gap(g.p, &gap) == GD_OK);
  CHECK(gap < 1e-10);

  Sig bad;
  CHECK(gd_signal_create(kL, kH, re.data(), nullptr, 100, &bad.p) == GD_GRID_MISMATCH);
  CHECK(gd_signal_create(kL, 0.03, re.data(), nullptr, n, &bad.p) == GD_NON_POWER_OF_TWO);
  re[3] = std::nan("");
  CHECK(gd_signal_create(kL, kH, re.data(), nullptr, n, &bad.p) == GD_INVALID_ARGUMENT);

  // Transforming a spectrum forward, or a time signal backward, is refused.
  Sig twice;
  CHECK(gd_forward_ft(spec.p, &twice.p) == GD_INVALID_ARGUMENT);
}

TEST_CASE("operators") {
  Sig g;
  REQUIRE(gd_signal_gaussian(kL, kH, 1.0, 0.0, &g.p) == GD_OK);
  Sig m;
  REQUIRE(gd_mollify(g.p, 4.0, &m.p) == GD_OK);
  Weight one("constant", {1.0}, kL);
  double e4 = 0, e16 = 0;
  CHECK(gd_composite_identity_error(g.p, 4.0, one.p, 0, &e4) == GD_OK);
  CHECK(gd_composite_identity_error(g.p, 16.0, one.p, 1, &e16) == GD_OK);
  CHECK(e16 < e4);
  CHECK(gd_composite_identity_error(g.p, -1.0, one.p, 0, &e4) == GD_INVALID_ARGUMENT);
}

TEST_CASE("spaces, approximation, witness") {
  Weight wt("constant", {1.0}, kL);
  Weight wo("sobolev-omega", {1.0}, 1.0 / (2 * kH));
  Space sp;
  REQUIRE(gd_space_create(wt.p, wo.p, kL, kH, 0.5, 0.5, 0, &sp.p) == GD_OK);
  CHECK(gd_space_hypotheses_hold(sp.p) == 1);

  Sig g;
  REQUIRE(gd_signal_gaussian(kL, kH, 1.0, 0.0, &g.p) == GD_OK);
  double nsq = 0;
  CHECK(gd_h_norm_sq(sp.p, g.p, &nsq) == GD_OK);
  CHECK(nsq == doctest::Approx((1 + std::numbers::pi) / std::sqrt(2.0)).epsilon(1e-8));
  double re = 0, im = 0;
  CHECK(gd_h_inner(sp.p, g.p, g.p, &re, &im) == GD_OK);
  CHECK(re == doctest::Approx(nsq));

  const double alphas[3] = {1, 2, 1}, taus[3] = {0, 0, 1};
  double cre[3], cim[3], residual = 1;
  CHECK(gd_least_squares(sp.p, g.p, alphas, taus, 3, -1.0, cre, cim, &residual) == GD_OK);
  CHECK(residual < 1e-6);
  CHECK(cre[0] == doctest::Approx(1.0).epsilon(1e-5));

  const double dup_a[2] = {1, 1}, dup_t[2] = {0, 0};
  CHECK(gd_least_squares(sp.p, g.p, dup_a, dup_t, 2, 0.0, cre, cim, &residual) == GD_SINGULAR_GRAM);

  double t1, t2, tg1, tg2;
  CHECK(gd_witness(sp.p, g.p, 64.0, &t1, &t2, &tg1, &tg2) == GD_OK);
  CHECK(tg1 == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(tg2 == doctest::Approx(std::numbers::pi / std::sqrt(2.0)).epsilon(1e-8));
  CHECK(t1 < tg1);
  CHECK(t1 > 0.98 * tg1);

  Sig other;
  REQUIRE(gd_signal_gaussian(4.0, kH, 1.0, 0.0, &other.p) == GD_OK);
  CHECK(gd_h_norm_sq(sp.p, other.p, &nsq) == GD_GRID_MISMATCH);
}

TEST_CASE("hypothesis gating") {
  Weight wt("gauss-square", {1.0}, kL);
  Weight wo("gauss-square", {1.0}, 1.0 / (2 * kH));
  Space sp;
  CHECK(gd_space_create(wt.p, wo.p, kL, kH, 0.5, 0.5, 0, &sp.p) == GD_VALIDATION_ERROR);
  CHECK(std::string(gd_last_error()).find("regularity failed") != std::string::npos);
  CHECK(sp.p == nullptr);
  REQUIRE(gd_space_create(wt.p, wo.p, kL, kH, 0.5, 0.5, 1, &sp.p) == GD_OK);
  CHECK(gd_space_hypotheses_hold(sp.p) == 0);
}

TEST_CASE("experiment runner") {
  const auto dir = std::filesystem::temp_directory_path() / "gd_c_api_test";
  std::filesystem::create_directories(dir);
  const auto cfg = dir / "c.json";
  std::ofstream(cfg) << R"({"grid": {"halfwidth": 8, "step": 0.03125},
    "weights": {"w_T": {"kind": "gauss-square"}, "w_Omega": {"kind": "gauss-square"}}})";
  int code = -1;
  CHECK(gd_experiment_run(cfg.c_str(), "check-weights", (dir / "o").c_str(), 0, 1, 0, &code) == GD_OK);
  CHECK(code == 2);
  CHECK(std::string(gd_experiment_message()).find("regularity failed") != std::string::npos);
  CHECK(gd_experiment_run(cfg.c_str(), "bogus", nullptr, 0, 1, 0, &code) == GD_OK);
  CHECK(code == 1);
  CHECK(gd_experiment_run(nullptr, "transform", nullptr, 0, 1, 0, &code) == GD_INVALID_ARGUMENT);
  std::filesystem::remove_all(dir);
}
