#include "flsi/nelder_mead.hpp"

#include <exception>
#include <limits>
#include <memory>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "flsi/error.hpp"

namespace flsi {

namespace {

struct Context {
  const std::function<double(std::span<const double>)>* f;
  std::exception_ptr failure;
  long evaluations = 0;
};

double trampoline(const gsl_vector* v, void* raw) {
  auto* ctx = static_cast<Context*>(raw);
  if (ctx->failure) return std::numeric_limits<double>::quiet_NaN();
  try {
    ++ctx->evaluations;
    return (*ctx->f)(std::span<const double>(v->data, v->size));
  } catch (...) {
    ctx->failure = std::current_exception();
    return std::numeric_limits<double>::quiet_NaN();
  }
}

struct VecDel {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct MinDel {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};

} // namespace

SimplexResult minimize_simplex(const std::function<double(std::span<const double>)>& f,
                               std::vector<double> x0, std::vector<double> step,
                               const SimplexOptions& opt) {
  const std::size_t n = x0.size();
  if (n == 0 || step.size() != n) throw Error(ErrorCode::InputInvalid, "simplex: bad dimensions");
  gsl_set_error_handler_off();

  Context ctx{&f, nullptr, 0};
  gsl_multimin_function fn{&trampoline, n, &ctx};
  std::unique_ptr<gsl_vector, VecDel> x(gsl_vector_alloc(n)), ss(gsl_vector_alloc(n));
  for (std::size_t i = 0; i < n; ++i) {
    gsl_vector_set(x.get(), i, x0[i]);
    gsl_vector_set(ss.get(), i, step[i]);
  }
  std::unique_ptr<gsl_multimin_fminimizer, MinDel> m(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));
  gsl_multimin_fminimizer_set(m.get(), &fn, x.get(), ss.get());
  if (ctx.failure) std::rethrow_exception(ctx.failure);

  SimplexResult res;
  int status = GSL_CONTINUE;
  while (status == GSL_CONTINUE && res.iterations < opt.max_iterations) {
    ++res.iterations;
    if (gsl_multimin_fminimizer_iterate(m.get()) != GSL_SUCCESS) break;
    status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(m.get()), opt.size_tol);
  }
  if (ctx.failure) std::rethrow_exception(ctx.failure);
  res.converged = status == GSL_SUCCESS;
  res.f = gsl_multimin_fminimizer_minimum(m.get());
  const gsl_vector* best = gsl_multimin_fminimizer_x(m.get());
  res.x.assign(best->data, best->data + n);
  res.evaluations = ctx.evaluations;
  return res;
}

} // namespace flsi
