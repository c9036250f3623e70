#include "qpoly.hpp"

#include <algorithm>
#include <utility>

#include "psigrh/errors.hpp"

namespace mp = boost::multiprecision;

namespace psigrh::detail {

int zp_degree(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

void zp_normalize(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

ZPoly zp_add(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] += b[i];
  }
  zp_normalize(r);
  return r;
}

ZPoly zp_sub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] -= b[i];
  }
  zp_normalize(r);
  return r;
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  zp_normalize(r);
  return r;
}

ZPoly zp_scale(const ZPoly& a, const mpz& c) {
  if (c == 0) return {};
  ZPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return r;
}

ZPoly zp_derivative(const ZPoly& a) {
  if (a.size() <= 1) return {};
  ZPoly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * static_cast<long>(i);
  zp_normalize(r);
  return r;
}

mpz zp_content(const ZPoly& a) {
  mpz g = 0;
  for (const mpz& c : a) {
    if (c == 0) continue;
    g = mp::gcd(g, mpz(abs(c)));
    if (g == 1) break;
  }
  return g;
}

ZPoly zp_primitive(const ZPoly& a) {
  mpz g = zp_content(a);
  if (g == 0) return {};
  if (g == 1) {
    ZPoly r = a;
    zp_normalize(r);
    return r;
  }
  ZPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] / g;
  zp_normalize(r);
  return r;
}

int zp_sign_at(const ZPoly& a, const mpq& t) {
  if (a.empty()) return 0;
  const int d = zp_degree(a);
  const mpz u = numerator(t);
  const mpz v = denominator(t);
  mpz val;
  if (v == 1) {
    val = a[d];
    for (int i = d - 1; i >= 0; --i) val = val * u + a[i];
  } else {
    std::vector<mpz> vp(static_cast<size_t>(d) + 1);
    vp[0] = 1;
    for (int k = 1; k <= d; ++k) vp[k] = vp[k - 1] * v;
    val = a[d];
    for (int i = d - 1; i >= 0; --i) val = val * u + a[i] * vp[d - i];
  }
  return val.sign();
}

int zp_sign_at_pos_inf(const ZPoly& a) {
  if (a.empty()) return 0;
  return a.back().sign();
}

namespace {

// Pseudo-remainder; the result equals lc(B)^count * (A mod B).
std::pair<ZPoly, int> pseudo_rem(const ZPoly& A, const ZPoly& B) {
  ZPoly R = A;
  const mpz& lcB = B.back();
  const int db = zp_degree(B);
  int count = 0;
  while (zp_degree(R) >= db) {
    const int dr = zp_degree(R);
    const int s = dr - db;
    const mpz lcR = R.back();
    ZPoly nr(static_cast<size_t>(dr));
    for (int i = 0; i < dr; ++i) nr[static_cast<size_t>(i)] = R[static_cast<size_t>(i)] * lcB;
    for (int i = 0; i < db; ++i) nr[static_cast<size_t>(i + s)] -= B[static_cast<size_t>(i)] * lcR;
    zp_normalize(nr);
    R = std::move(nr);
    ++count;
  }
  return {R, count};
}

// Exact quotient over Q of two integer polynomials with B | A; the quotient
// of primitive inputs is integral.
ZPoly exact_div(const ZPoly& A, const ZPoly& B) {
  const int da = zp_degree(A);
  const int db = zp_degree(B);
  if (db < 0) throw Error("polynomial division by zero");
  if (da < db) throw Error("exact polynomial division with smaller dividend");
  std::vector<mpq> rem(A.begin(), A.end());
  std::vector<mpq> q(static_cast<size_t>(da - db) + 1);
  const mpq lead(B.back());
  for (int i = da - db; i >= 0; --i) {
    mpq qc = rem[static_cast<size_t>(db + i)] / lead;
    q[static_cast<size_t>(i)] = qc;
    for (int k = 0; k <= db; ++k) rem[static_cast<size_t>(k + i)] -= qc * mpq(B[static_cast<size_t>(k)]);
  }
  for (const mpq& r : rem)
    if (r != 0) throw Error("nonzero remainder in exact polynomial division");
  ZPoly out(q.size());
  for (size_t i = 0; i < q.size(); ++i) {
    if (denominator(q[i]) != 1) throw Error("nonintegral quotient in exact polynomial division");
    out[i] = numerator(q[i]);
  }
  zp_normalize(out);
  return out;
}

ZPoly linear_from_root(const mpq& r) {
  return ZPoly{-numerator(r), denominator(r)};
}

int variations(const std::vector<ZPoly>& chain, const mpq& t) {
  int prev = 0, v = 0;
  for (const ZPoly& f : chain) {
    const int s = zp_sign_at(f, t);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

}  // namespace

std::vector<ZPoly> sturm_chain(const ZPoly& p) {
  std::vector<ZPoly> chain;
  ZPoly a = zp_primitive(p);
  chain.push_back(a);
  if (zp_degree(a) <= 0) return chain;
  chain.push_back(zp_primitive(zp_derivative(a)));
  while (zp_degree(chain.back()) > 0) {
    const ZPoly& A = chain[chain.size() - 2];
    const ZPoly& B = chain.back();
    auto [r, count] = pseudo_rem(A, B);
    if (r.empty()) break;
    const bool neg_mult = (B.back() < 0) && (count % 2 == 1);
    r = zp_primitive(r);
    if (!neg_mult) r = zp_scale(r, mpz(-1));
    chain.push_back(std::move(r));
  }
  return chain;
}

ZPoly squarefree_part(const ZPoly& p0) {
  ZPoly p = zp_primitive(p0);
  if (zp_degree(p) <= 1) return p;
  auto chain = sturm_chain(p);
  const ZPoly& g = chain.back();
  if (zp_degree(g) <= 0) return p;
  return zp_primitive(exact_div(p, zp_primitive(g)));
}

mpq root_magnitude_bound(const ZPoly& p) {
  const int d = zp_degree(p);
  if (d <= 0) return mpq(1);
  const long lead_bits = static_cast<long>(mp::msb(mpz(abs(p.back())))) + 1;
  long emax = 0;
  for (int i = 1; i <= d; ++i) {
    const mpz& c = p[static_cast<size_t>(d - i)];
    if (c == 0) continue;
    long delta = static_cast<long>(mp::msb(mpz(abs(c)))) + 1 - lead_bits + 1;
    if (delta < 0) delta = 0;
    emax = std::max(emax, (delta + i - 1) / i);
  }
  return mpq(mpz(1) << static_cast<unsigned>(emax + 1));
}

int count_roots(const std::vector<ZPoly>& chain, const mpq& a, const mpq& b) {
  if (!(a < b)) return 0;
  if (zp_sign_at(chain.front(), a) == 0 || zp_sign_at(chain.front(), b) == 0)
    throw Error("count_roots endpoint is a root");
  return variations(chain, a) - variations(chain, b);
}

int count_real_roots(const ZPoly& p) {
  ZPoly h = squarefree_part(p);
  if (zp_degree(h) <= 0) return 0;
  auto chain = sturm_chain(h);
  const mpq B = root_magnitude_bound(h) + 1;
  return count_roots(chain, -B, B);
}

namespace {

struct RootBox {
  mpq lo, hi;  // root in (lo, hi] with h nonzero at both ends; exact: lo == hi == root
  bool exact = false;
};

struct Isolation {
  ZPoly h;  // squarefree polynomial whose remaining roots the interval boxes track
  std::vector<ZPoly> chain;
  std::vector<RootBox> boxes;      // sorted, strictly separated
  std::vector<mpq> separators;     // one strictly between each consecutive pair
};

// Move box so the point e lies strictly outside [box.lo, box.hi]; the box's
// root differs from e since e was divided out of h.
void fix_box_against_point(const Isolation& iso, RootBox& box, const mpq& e) {
  while (!box.exact && !(e < box.lo) && !(e > box.hi)) {
    mpq step = (box.hi - box.lo) / 2;
    for (;;) {
      const mpq u = box.lo + step;
      if (u >= box.hi) {
        step /= 2;
        continue;
      }
      const int s = zp_sign_at(iso.h, u);
      if (s == 0) {
        box.lo = box.hi = u;
        box.exact = true;
        break;
      }
      if (count_roots(iso.chain, box.lo, u) == 0) {
        box.lo = u;
        break;
      }
      box.hi = u;
      step /= 2;
    }
  }
}

Isolation isolate_roots(ZPoly h0) {
  Isolation iso;
  std::vector<mpq> exact_pts;
  ZPoly h = std::move(h0);
  std::vector<RootBox> boxes;
  for (;;) {
    boxes.clear();
    zp_normalize(h);
    if (zp_degree(h) <= 0) break;
    if (zp_degree(h) == 1) {
      exact_pts.push_back(mpq(-h[0]) / mpq(h[1]));
      h = ZPoly{1};
      break;
    }
    auto chain = sturm_chain(h);
    const mpq B = root_magnitude_bound(h) + 1;
    struct Node {
      mpq lo, hi;
      int cnt;
    };
    std::vector<Node> stack;
    stack.push_back({-B, B, count_roots(chain, -B, B)});
    bool restart = false;
    while (!stack.empty()) {
      Node nd = std::move(stack.back());
      stack.pop_back();
      if (nd.cnt == 0) continue;
      if (nd.cnt == 1) {
        boxes.push_back({nd.lo, nd.hi, false});
        continue;
      }
      const mpq mid = (nd.lo + nd.hi) / 2;
      if (zp_sign_at(h, mid) == 0) {
        exact_pts.push_back(mid);
        h = exact_div(h, linear_from_root(mid));
        restart = true;
        break;
      }
      const int cl = count_roots(chain, nd.lo, mid);
      if (cl > 0) stack.push_back({nd.lo, mid, cl});
      if (nd.cnt - cl > 0) stack.push_back({mid, nd.hi, nd.cnt - cl});
    }
    if (!restart) {
      iso.chain = std::move(chain);
      break;
    }
  }
  iso.h = std::move(h);
  if (iso.chain.empty()) iso.chain = sturm_chain(iso.h);

  for (const mpq& e : exact_pts) boxes.push_back({e, e, true});
  auto by_pos = [](const RootBox& x, const RootBox& y) {
    if (x.lo != y.lo) return x.lo < y.lo;
    return x.hi < y.hi;
  };
  for (;;) {
    bool changed = false;
    for (const mpq& e : exact_pts)
      for (RootBox& box : boxes)
        if (!box.exact && !(e < box.lo) && !(e > box.hi)) {
          fix_box_against_point(iso, box, e);
          changed = true;
        }
    if (!changed) break;
  }
  std::sort(boxes.begin(), boxes.end(), by_pos);

  iso.separators.reserve(boxes.empty() ? 0 : boxes.size() - 1);
  for (size_t i = 0; i + 1 < boxes.size(); ++i) {
    const RootBox& l = boxes[i];
    const RootBox& r = boxes[i + 1];
    if (l.hi < r.lo) {
      iso.separators.push_back((l.hi + r.lo) / 2);
    } else {
      // touching interval boxes share a bisection midpoint, already known
      // to be a nonroot
      if (!(l.hi == r.lo) || l.exact || r.exact) throw Error("root isolation produced overlapping boxes");
      if (zp_sign_at(iso.h, l.hi) == 0) throw Error("root isolation separator hit a root");
      iso.separators.push_back(l.hi);
    }
  }
  iso.boxes = std::move(boxes);
  return iso;
}

}  // namespace

NonnegReport prove_nonneg(const ZPoly& p0, const mpq& a, const std::optional<mpq>& b) {
  if (b && *b < a) throw DomainError("prove_nonneg: empty interval");
  NonnegReport rep;
  ZPoly p = p0;
  zp_normalize(p);
  if (p.empty()) {
    rep.ok = true;
    rep.detail = "zero polynomial";
    return rep;
  }
  if (zp_degree(p) == 0) {
    rep.ok = p[0] > 0;
    if (!rep.ok) {
      rep.witness = a;
      rep.detail = "negative constant";
    } else {
      rep.detail = "positive constant";
    }
    return rep;
  }
  const int sa = zp_sign_at(p, a);
  if (sa < 0) {
    rep.witness = a;
    rep.detail = "negative at left endpoint";
    return rep;
  }
  if (b) {
    const int sb = zp_sign_at(p, *b);
    if (sb < 0) {
      rep.witness = *b;
      rep.detail = "negative at right endpoint";
      return rep;
    }
  }

  ZPoly h = squarefree_part(p);

  if (sa != 0 && (!b || zp_sign_at(p, *b) != 0)) {
    auto chain = sturm_chain(h);
    mpq hi = b ? *b : std::max(a, root_magnitude_bound(h)) + 1;
    if (a < hi && count_roots(chain, a, hi) == 0) {
      rep.ok = true;
      rep.detail = "no interior roots; positive at domain boundary";
      return rep;
    }
    if (!(a < hi)) {  // degenerate single-point domain
      rep.ok = true;
      rep.detail = "single-point domain, nonnegative there";
      return rep;
    }
  }

  Isolation iso = isolate_roots(h);

  std::vector<mpq> samples;
  samples.push_back(a);
  if (b) samples.push_back(*b);
  for (const mpq& s : iso.separators)
    if (s > a && (!b || s < *b)) samples.push_back(s);
  if (!b && !iso.boxes.empty()) samples.push_back(std::max(iso.boxes.back().hi, a) + 1);

  for (const mpq& t : samples) {
    if (zp_sign_at(p, t) < 0) {
      rep.witness = t;
      rep.detail = "negative between adjacent real roots";
      return rep;
    }
  }
  rep.ok = true;
  rep.detail = "nonnegative across all root gaps (" + std::to_string(iso.boxes.size()) + " real roots inspected)";
  return rep;
}

mpz resultant(const ZPoly& a, const ZPoly& b) {
  ZPoly A = a;
  ZPoly B = b;
  zp_normalize(A);
  zp_normalize(B);
  const int da = zp_degree(A);
  const int db = zp_degree(B);
  if (da < 0 || db < 0) return 0;
  if (da == 0) return mp::pow(A[0], static_cast<unsigned>(db));
  if (db == 0) return mp::pow(B[0], static_cast<unsigned>(da));
  const int m = da + db;
  std::vector<std::vector<mpz>> M(static_cast<size_t>(m), std::vector<mpz>(static_cast<size_t>(m)));
  for (int i = 0; i < db; ++i)
    for (int k = 0; k <= da; ++k) M[static_cast<size_t>(i)][static_cast<size_t>(i + k)] = A[static_cast<size_t>(da - k)];
  for (int i = 0; i < da; ++i)
    for (int k = 0; k <= db; ++k) M[static_cast<size_t>(db + i)][static_cast<size_t>(i + k)] = B[static_cast<size_t>(db - k)];

  int sign = 1;
  mpz prev = 1;
  for (int k = 0; k < m - 1; ++k) {
    if (M[static_cast<size_t>(k)][static_cast<size_t>(k)] == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < m; ++i)
        if (M[static_cast<size_t>(i)][static_cast<size_t>(k)] != 0) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return 0;
      std::swap(M[static_cast<size_t>(k)], M[static_cast<size_t>(swap_row)]);
      sign = -sign;
    }
    for (int i = k + 1; i < m; ++i) {
      for (int j = k + 1; j < m; ++j) {
        mpz num = M[static_cast<size_t>(i)][static_cast<size_t>(j)] * M[static_cast<size_t>(k)][static_cast<size_t>(k)] -
                  M[static_cast<size_t>(i)][static_cast<size_t>(k)] * M[static_cast<size_t>(k)][static_cast<size_t>(j)];
        M[static_cast<size_t>(i)][static_cast<size_t>(j)] = num / prev;
      }
      M[static_cast<size_t>(i)][static_cast<size_t>(k)] = 0;
    }
    prev = M[static_cast<size_t>(k)][static_cast<size_t>(k)];
  }
  return sign * M[static_cast<size_t>(m - 1)][static_cast<size_t>(m - 1)];
}

mpz disc_of_monic(const ZPoly& f) {
  ZPoly g = f;
  zp_normalize(g);
  const int n = zp_degree(g);
  if (n < 1) throw DomainError("discriminant needs degree >= 1");
  if (g.back() != 1) throw DomainError("discriminant helper expects a monic polynomial");
  const mpz r = resultant(g, zp_derivative(g));
  const bool flip = ((static_cast<long>(n) * (n - 1)) / 2) % 2 == 1;
  return flip ? mpz(-r) : r;
}

}  // namespace psigrh::detail
