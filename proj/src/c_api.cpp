#include "gaussdense/gaussdense.h"

#include <cmath>
#include <algorithm>
#include <memory>
#include <optional>
#include <string>

#include "gaussdense/approx.hpp"
#include "gaussdense/error.hpp"
#include "gaussdense/experiment.hpp"
#include "gaussdense/operators.hpp"
#include "gaussdense/transform.hpp"
#include "gaussdense/wspace.hpp"

using namespace gaussdense;

struct gd_weight {
  WeightSpec spec;
};

struct gd_signal {
  Grid grid;
  std::vector<cplx> values;
  bool spectrum = false;
};

struct gd_space {
  SpacePair sp;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_message;

template <class Fn>
gd_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return GD_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<gd_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return GD_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GD_INTERNAL_ERROR;
  }
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

Signal as_signal(const gd_signal* s) {
  need(s, "signal");
  if (s->spectrum) fail(ErrorCode::InvalidArgument, "expected a time-domain signal");
  return Signal(s->grid, s->values);
}

gd_signal* wrap(const Grid& g, std::vector<cplx> v, bool spectrum) {
  return new gd_signal{g, std::move(v), spectrum};
}

}  // namespace

extern "C" {

const char* gd_version(void) { return kVersion; }
const char* gd_last_error(void) { return last_error.c_str(); }
const char* gd_experiment_message(void) { return last_message.c_str(); }

const char* gd_status_name(gd_status status) {
  if (status == GD_OK) return "Ok";
  if (status == GD_INTERNAL_ERROR) return "InternalError";
  return error_code_name(static_cast<ErrorCode>(static_cast<int>(status)));
}

gd_status gd_weight_create(const char* kind, const double* params, size_t n_params, double halfwidth, gd_weight** out) {
  return guarded([&] {
    need(kind, "kind");
    need(out, "out");
    if (n_params > 0) need(params, "params");
    const WeightKind k = parse_weight_kind(kind);
    if (k == WeightKind::Table) fail(ErrorCode::InvalidArgument, "use gd_weight_from_table for tables");
    std::vector<double> p(params, params + n_params);
    *out = new gd_weight{WeightSpec::preset(k, std::move(p), halfwidth)};
  });
}

gd_status gd_weight_from_table(const double* xi, const double* w, size_t n, gd_weight** out) {
  return guarded([&] {
    need(xi, "xi");
    need(w, "w");
    need(out, "out");
    *out = new gd_weight{WeightSpec::table(std::vector<double>(xi, xi + n), std::vector<double>(w, w + n))};
  });
}

void gd_weight_destroy(gd_weight* w) { delete w; }

gd_status gd_weight_eval(const gd_weight* w, double xi, double* out) {
  return guarded([&] {
    need(w, "weight");
    need(out, "out");
    *out = eval_weight(w->spec, xi);
  });
}

gd_status gd_weight_envelope(const gd_weight* w, double step, double* c, double* mu, int* regular) {
  return guarded([&] {
    need(w, "weight");
    const double half = w->spec.kind == WeightKind::Table
                            ? w->spec.table_spacing * static_cast<double>(w->spec.table_values.size()) / 2.0
                            : w->spec.domain_halfwidth;
    const RegularityEnvelope env = fit_envelope(estimate_mmc(w->spec, default_deltas(half), step));
    if (c) *c = env.c_w;
    if (mu) *mu = env.mu_w;
    if (regular) *regular = env.regular ? 1 : 0;
  });
}

gd_status gd_weight_nondegenerate(const gd_weight* w, double epsilon, double step, double* measure, int* passes) {
  return guarded([&] {
    need(w, "weight");
    const NonDegeneracyReport r = check_nondegeneracy(w->spec, epsilon, step);
    if (measure) *measure = r.sublevel_measure;
    if (passes) *passes = r.passes ? 1 : 0;
  });
}

gd_status gd_signal_create(double halfwidth, double step, const double* re, const double* im, size_t n, gd_signal** out) {
  return guarded([&] {
    need(re, "re");
    need(out, "out");
    const Grid g = Grid::make(halfwidth, step);
    if (g.count() != n) fail(ErrorCode::GridMismatch, "expected " + std::to_string(g.count()) + " samples");
    std::vector<cplx> v(n);
    for (size_t k = 0; k < n; ++k) {
      v[k] = cplx(re[k], im ? im[k] : 0.0);
      if (!std::isfinite(v[k].real()) || !std::isfinite(v[k].imag()))
        fail(ErrorCode::InvalidArgument, "sample " + std::to_string(k) + " is not finite");
    }
    *out = wrap(g, std::move(v), false);
  });
}

gd_status gd_signal_gaussian(double halfwidth, double step, double alpha, double tau, gd_signal** out) {
  return guarded([&] {
    need(out, "out");
    const Grid g = Grid::make(halfwidth, step);
    validate_atom({alpha, tau}, g);
    *out = wrap(g, atom_signal({alpha, tau}, g).values, false);
  });
}

void gd_signal_destroy(gd_signal* s) { delete s; }

size_t gd_signal_count(const gd_signal* s) { return s ? s->values.size() : 0; }

gd_status gd_signal_grid(const gd_signal* s, double* halfwidth, double* step) {
  return guarded([&] {
    need(s, "signal");
    if (halfwidth) *halfwidth = s->grid.halfwidth();
    if (step) *step = s->grid.step();
  });
}

gd_status gd_signal_values(const gd_signal* s, double* re, double* im, size_t n) {
  return guarded([&] {
    need(s, "signal");
    if (n < s->values.size()) fail(ErrorCode::InvalidArgument, "output buffer too small");
    for (size_t k = 0; k < s->values.size(); ++k) {
      if (re) re[k] = s->values[k].real();
      if (im) im[k] = s->values[k].imag();
    }
  });
}

gd_status gd_forward_ft(const gd_signal* x, gd_signal** out) {
  return guarded([&] {
    need(out, "out");
    Spectrum y = forward_ft(as_signal(x));
    *out = wrap(y.grid, std::move(y.values), true);
  });
}

gd_status gd_inverse_ft(const gd_signal* y, gd_signal** out) {
  return guarded([&] {
    need(y, "spectrum");
    need(out, "out");
    if (!y->spectrum) fail(ErrorCode::InvalidArgument, "expected a spectrum");
    Signal x = inverse_ft(Spectrum(y->grid, y->values));
    *out = wrap(x.grid, std::move(x.values), false);
  });
}

gd_status gd_parseval_gap(const gd_signal* x, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = parseval_gap(as_signal(x));
  });
}

gd_status gd_mollify(const gd_signal* x, double alpha, gd_signal** out) {
  return guarded([&] {
    need(x, "signal");
    need(out, "out");
    *out = wrap(x->grid, mollify_values(x->grid, x->values, alpha), x->spectrum);
  });
}

gd_status gd_composite_identity_error(const gd_signal* x, double alpha, const gd_weight* w, int order, double* out) {
  return guarded([&] {
    need(x, "signal");
    need(w, "weight");
    need(out, "out");
    if (order != 0 && order != 1) fail(ErrorCode::InvalidArgument, "order must be 0 (IM) or 1 (MI)");
    const WeightSpec spec = w->spec.kind == WeightKind::Table ? w->spec : with_domain(w->spec, x->grid.halfwidth());
    *out = composite_identity_error(x->grid, x->values, alpha, sample_weight(spec, x->grid),
                                    order == 0 ? CompositeOrder::IM : CompositeOrder::MI);
  });
}

gd_status gd_space_create(const gd_weight* w_t, const gd_weight* w_omega, double halfwidth, double step,
                          double epsilon_t, double epsilon_omega, int force, gd_space** out) {
  return guarded([&] {
    need(w_t, "w_t");
    need(w_omega, "w_omega");
    need(out, "out");
    SpaceOptions o;
    o.epsilon_t = epsilon_t;
    o.epsilon_omega = epsilon_omega;
    o.force = force != 0;
    *out = new gd_space{SpacePair::make(w_t->spec, w_omega->spec, Grid::make(halfwidth, step), o)};
  });
}

void gd_space_destroy(gd_space* sp) { delete sp; }

int gd_space_hypotheses_hold(const gd_space* sp) { return sp && sp->sp.hypotheses_hold() ? 1 : 0; }

gd_status gd_h_norm_sq(const gd_space* sp, const gd_signal* x, double* out) {
  return guarded([&] {
    need(sp, "space");
    need(out, "out");
    *out = h_norm_sq(as_signal(x), sp->sp);
  });
}

gd_status gd_h_inner(const gd_space* sp, const gd_signal* x, const gd_signal* y, double* re, double* im) {
  return guarded([&] {
    need(sp, "space");
    const cplx z = h_inner(as_signal(x), as_signal(y), sp->sp);
    if (re) *re = z.real();
    if (im) *im = z.imag();
  });
}

gd_status gd_least_squares(const gd_space* sp, const gd_signal* f, const double* alphas, const double* taus, size_t n,
                           double ridge, double* coef_re, double* coef_im, double* residual) {
  return guarded([&] {
    need(sp, "space");
    if (n > 0) {
      need(alphas, "alphas");
      need(taus, "taus");
    }
    std::vector<GaussianAtom> atoms(n);
    for (size_t i = 0; i < n; ++i) {
      atoms[i] = {alphas[i], taus[i]};
      validate_atom(atoms[i], sp->sp.grid());
    }
    const std::optional<double> r = ridge < 0.0 ? std::nullopt : std::optional<double>(ridge);
    const ApproxReport rep = least_squares_fit(as_signal(f), Dictionary::gaussians(std::move(atoms), sp->sp), r);
    for (size_t i = 0; i < n; ++i) {
      if (coef_re) coef_re[i] = rep.coefficients[i].real();
      if (coef_im) coef_im[i] = rep.coefficients[i].imag();
    }
    if (residual) *residual = rep.residual_h_norm;
  });
}

gd_status gd_witness(const gd_space* sp, const gd_signal* f, double alpha, double* term1, double* term2,
                     double* target1, double* target2) {
  return guarded([&] {
    need(sp, "space");
    const WitnessCurves w = completeness_witness(as_signal(f), sp->sp, {alpha});
    if (term1) *term1 = w.term1[0].real();
    if (term2) *term2 = w.term2[0].real();
    if (target1) *target1 = w.target1;
    if (target2) *target2 = w.target2;
  });
}

gd_status gd_experiment_run(const char* config_path, const char* subcommand, const char* out_dir, int force,
                            unsigned threads, uint64_t seed, int* exit_code) {
  return guarded([&] {
    need(config_path, "config_path");
    need(subcommand, "subcommand");
    RunOptions o;
    if (out_dir) o.out_dir = out_dir;
    o.force = force != 0;
    o.threads = threads == 0 ? 1 : threads;
    o.seed = seed;
    const RunResult r = run_experiment(config_path, subcommand, o);
    last_message = r.message;
    if (exit_code) *exit_code = r.exit_code;
  });
}

}  // extern "C"
