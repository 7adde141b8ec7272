#include "sweep/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace sweep {

namespace {

double env_double(const char* name, double fallback) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return fallback;
  char* end = nullptr;
  double v = std::strtod(raw, &end);
  if (end == raw || !std::isfinite(v) || v <= 0.0) return fallback;
  return v;
}

int env_int(const char* name, int fallback) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return fallback;
  long v = std::strtol(raw, nullptr, 10);
  if (v < 1 || v > 4096) return fallback;
  return static_cast<int>(v);
}

Tolerances load_tolerances() {
  Tolerances t;
  t.feas = env_double("SWEEP_TOL_FEAS", t.feas);
  t.proj = env_double("SWEEP_TOL_PROJ", t.proj);
  t.active = env_double("SWEEP_TOL_ACTIVE", t.active);
  t.dedupe = env_double("SWEEP_DEDUPE", t.dedupe);
  t.multistart = env_int("SWEEP_MULTISTART", t.multistart);
  return t;
}

}  // namespace

const Tolerances& default_tolerances() {
  static const Tolerances t = load_tolerances();
  return t;
}

bool all_finite(const Vector& x) {
  return x.allFinite();
}

void require_dim(const Vector& x, Eigen::Index d, const char* what) {
  if (x.size() != d)
    throw input_error(std::string(what) + ": expected dimension " +
                      std::to_string(d) + ", got " + std::to_string(x.size()));
}

void require_finite(const Vector& x, const char* what) {
  if (!x.allFinite())
    throw input_error(std::string(what) + ": non-finite coordinates");
}

bool lex_less(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(),
                                      b.data(), b.data() + b.size());
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace sweep
