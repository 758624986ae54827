#include "prkit/arrangements.hpp"

#include <random>

#include "prkit/conic.hpp"
#include "prkit/error.hpp"
#include "prkit/sweep.hpp"

namespace prkit {

bool raster_resolvable(const DomainSpec& d, int resolution, int cells) {
  const Rational cell = (d.box.xmax - d.box.xmin) / resolution;
  const Rational delta = cell * cells;
  Sweep sw(d);
  auto xs = sw.closure_critical_values();
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    xs[i].refine(cell);
    xs[i + 1].refine(cell);
    if (xs[i + 1].lo() - xs[i].hi() < delta) return false;
  }
  // Every raster column away from the critical values: member intervals and
  // the gaps next to them at least two cells wide, and overlapping the same
  // interval of the neighbouring column by two cells, so no channel pinches
  // or tilts apart between columns. The slab midpoints need the full margin.
  struct Span {
    Rational lo, hi;          // inner bounds
    Rational lo_out, hi_out;  // outer bounds
    bool member;
  };
  auto profile = [&](const Rational& t) {
    SliceProfile s = sw.slice(t);
    std::vector<Span> out;
    for (auto& iv : s.intervals) {
      iv.lo.refine(cell / 4);
      iv.hi.refine(cell / 4);
      out.push_back({iv.lo.hi(), iv.hi.lo(), iv.lo.lo(), iv.hi.hi(), iv.member});
    }
    return out;
  };
  // Widths use inner bounds and gaps the outer bounds of their neighbours,
  // so both are underestimated.
  auto resolvable = [&](const std::vector<Span>& a, const std::vector<Span>& b, const Rational& need) {
    if (a.size() != b.size()) return false;
    for (size_t j = 0; j < a.size(); ++j) {
      using std::max, std::min;
      if (a[j].member && min(a[j].hi, b[j].hi) - max(a[j].lo, b[j].lo) < need) return false;
      if (j + 1 < a.size() && (a[j].member || a[j + 1].member) &&
          min(a[j + 1].lo_out, b[j + 1].lo_out) - max(a[j].hi_out, b[j].hi_out) < need)
        return false;
    }
    return true;
  };
  const Rational thin = cell * 2;
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    Rational mid = (xs[i].hi() + xs[i + 1].lo()) / 2;
    mid.canonicalize();
    auto m = profile(mid);
    if (!resolvable(m, m, delta)) return false;
    std::vector<Span> prev;
    for (int c = 0; c < resolution; ++c) {
      Rational t = d.box.xmin + cell * Rational(2 * c + 1, 2);
      t.canonicalize();
      if (t - xs[i].hi() < delta || xs[i + 1].lo() - t < delta) continue;
      auto cur = profile(t);
      if (!resolvable(cur, prev.empty() ? cur : prev, thin)) return false;
      prev = std::move(cur);
    }
  }
  // The raster starts its flood fill from the cell holding the basepoint, so
  // that cell's centre must sit well inside the basepoint fibre interval.
  const auto floor_div = [](const Rational& a, const Rational& b) {
    Rational q = a / b;
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f;
  };
  const Integer bi = floor_div(d.bx - d.box.xmin, cell), bj = floor_div(d.by - d.box.ymin, cell);
  const Rational cx = d.box.xmin + cell * (Rational(bi) + Rational(1, 2));
  const Rational cy = d.box.ymin + cell * (Rational(bj) + Rational(1, 2));
  bool centred = false;
  for (auto& iv : sw.slice(cx).intervals) {
    if (!iv.member) continue;
    iv.lo.refine(cell);
    iv.hi.refine(cell);
    centred |= iv.lo.hi() + delta <= cy && cy + delta <= iv.hi.lo();
  }
  return centred;
}

std::vector<DomainSpec> random_conic_arrangements(int count, unsigned seed, int resolution) {
  std::mt19937 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::vector<DomainSpec> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count && attempts < 200 * count) {
    ++attempts;
    DomainSpec d;
    d.box = {Rational(-4), Rational(4), Rational(-4), Rational(4)};
    const int n = pick(2, 4);
    for (int j = 0; j < n; ++j) {
      ConicSpec c;
      c.cx = Rational(pick(-12, 12), 8);
      c.cy = Rational(pick(-12, 12), 8);
      c.a1 = Rational(pick(2, 6), 4);
      c.a2 = Rational(pick(2, 6), 4);
      c.r = Rational(pick(1, 12), 4);
      c.sign = j == 0 || pick(0, 1) == 0 ? ConicSign::InteriorPositive : ConicSign::ExteriorPositive;
      d.curves.push_back({"c" + std::to_string(j), conic(c)});
    }
    bool found = false;
    for (int tries = 0; tries < 50 && !found; ++tries) {
      d.bx = Rational(pick(-32, 32), 16);
      d.by = Rational(pick(-32, 32), 16);
      found = true;
      for (auto& c : d.curves) found = found && sgn(c.f.eval(d.bx, d.by)) > 0;
    }
    if (!found) continue;
    try {
      if (!validate_domain(d).ok() || !raster_resolvable(d, resolution)) continue;
    } catch (const Error&) {
      continue;
    }
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace prkit
