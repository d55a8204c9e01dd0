#include "maba/izergin.hpp"

#include "maba/determinant.hpp"

namespace maba {

namespace {

Rational f_(const Rational& a, const Rational& b, const Rational& c) { return kernel_f(a, b, c); }
Rational h_(const Rational& a, const Rational& b, const Rational& c) { return kernel_h(a, b, c); }

void require_u_side(const Rational& z, std::size_t n, std::size_t m) {
  if (z == 1 && n > m)
    throw VariantUndefined("u-side representation undefined at z = 1 with n > m");
}

}  // namespace

Rational mod_izergin(const Rational& z, Params u, Params v, const Rational& c,
                     IzerginSide side) {
  const auto n = static_cast<Eigen::Index>(u.size());
  const auto m = static_cast<Eigen::Index>(v.size());
  if (side == IzerginSide::v_side) {
    MatrixQ a(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
      const Rational row = prod_f(u, v.subspan(j, 1), c) *
                           complement_product(Kernel::f, v, j, c, /*element_first=*/true);
      for (Eigen::Index k = 0; k < m; ++k) {
        a(j, k) = row / h_(v[j], v[k], c);
        if (j == k) a(j, k) -= z;
      }
    }
    return determinant_bareiss(a);
  }
  require_u_side(z, u.size(), v.size());
  MatrixQ a(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Rational zrow = z * complement_product(Kernel::f, u, j, c, true);
    const Rational diag = prod_f(u.subspan(j, 1), v, c);
    for (Eigen::Index k = 0; k < n; ++k) {
      a(j, k) = -zrow / h_(u[j], u[k], c);
      if (j == k) a(j, k) += diag;
    }
  }
  return ipow(Rational(1) - z, static_cast<int>(m - n)) * determinant_bareiss(a);
}

Rational conj_mod_izergin(const Rational& z, Params u, Params v, const Rational& c,
                          IzerginSide side) {
  const auto n = static_cast<Eigen::Index>(u.size());
  const auto m = static_cast<Eigen::Index>(v.size());
  if (side == IzerginSide::v_side) {
    MatrixQ a(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
      const Rational row = prod_f(v.subspan(j, 1), u, c) *
                           complement_product(Kernel::f, v, j, c, /*element_first=*/false);
      for (Eigen::Index k = 0; k < m; ++k) {
        a(j, k) = row / h_(v[k], v[j], c);
        if (j == k) a(j, k) -= z;
      }
    }
    return determinant_bareiss(a);
  }
  require_u_side(z, u.size(), v.size());
  MatrixQ a(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Rational zrow = z * complement_product(Kernel::f, u, j, c, false);
    const Rational diag = prod_f(v, u.subspan(j, 1), c);
    for (Eigen::Index k = 0; k < n; ++k) {
      a(j, k) = -zrow / h_(u[k], u[j], c);
      if (j == k) a(j, k) += diag;
    }
  }
  return ipow(Rational(1) - z, static_cast<int>(m - n)) * determinant_bareiss(a);
}

Rational ordinary_izergin(Params u, Params v, const Rational& c) {
  if (u.size() != v.size())
    throw CardinalityError("ordinary Izergin determinant needs #u == #v (" +
                           std::to_string(u.size()) + " vs " + std::to_string(v.size()) + ")");
  const auto n = static_cast<Eigen::Index>(u.size());
  // Delta'_g(u) Delta_g(v) h(u, v) det(g(u_j, v_k) / h(u_j, v_k))
  Rational pre(1);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      pre *= kernel_g(u[j], u[k], c);
      pre *= kernel_g(v[k], v[j], c);
    }
  }
  pre *= set_product(Kernel::h, u, v, c);
  MatrixQ a(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) a(j, k) = kernel_g(u[j], v[k], c) / h_(u[j], v[k], c);
  return pre * determinant_bareiss(a);
}

Rational izergin_partition_sum(const Rational& z, Params u, Params v, const Rational& c,
                               PartitionSide side, bool conjugated) {
  return izergin_partition_sum_with(f_, z, u, v, c, side, conjugated);
}

Rational izergin_convolution(const Rational& z1, const Rational& z2, Params u, Params v,
                             Params xi, const Rational& c, bool conjugated) {
  const SplitEnumerator e(xi.size(), 2);
  return split_sum(e, [&](const Split& s) {
           const auto x1 = select(s[0], xi);
           const auto x2 = select(s[1], xi);
           const Rational w = ipow(z2, static_cast<int>(x1.size()));
           if (w == 0) return Rational(0);
           if (conjugated)
             return w * conj_mod_izergin(z1, u, x1, c) * conj_mod_izergin(z2, v, x2, c) *
                    prod_f(x1, x2, c) * prod_f(x2, u, c);
           return w * mod_izergin(z1, u, x1, c) * mod_izergin(z2, v, x2, c) *
                  prod_f(x2, x1, c) * prod_f(u, x2, c);
         })
      .value;
}

Rational izergin_shifted_convolution(Params u, Params v, Params xi, const Rational& c,
                                     bool conjugated) {
  const Rational one(1);
  const Rational shift = conjugated ? -c : c;
  const SplitEnumerator e(xi.size(), 2);
  return split_sum(e, [&](const Split& s) {
           const auto x1 = select(s[0], xi);
           const auto x2 = select(s[1], xi);
           auto s1 = x1;
           auto s2 = x2;
           for (auto& x : s1) x += shift;
           for (auto& x : s2) x += shift;
           if (conjugated)
             return conj_mod_izergin(one, u, s1, c) * conj_mod_izergin(one, v, s2, c) *
                    prod_f(x1, x2, c) / prod_f(u, x2, c);
           return mod_izergin(one, u, s1, c) * mod_izergin(one, v, s2, c) *
                  prod_f(x2, x1, c) / prod_f(x2, u, c);
         })
      .value;
}

Rational izergin_deformation_sum(const Rational& z1, const Rational& z2, Params u, Params v,
                                 const Rational& c, bool conjugated) {
  const SplitEnumerator e(v.size(), 2);
  return split_sum(e, [&](const Split& s) {
           const auto v1 = select(s[0], v);
           const auto v2 = select(s[1], v);
           const Rational w = ipow(z1, static_cast<int>(v2.size()));
           if (w == 0) return Rational(0);
           return conjugated ? w * conj_mod_izergin(z2, u, v1, c) * prod_f(v2, v1, c)
                             : w * mod_izergin(z2, u, v1, c) * prod_f(v1, v2, c);
         })
      .value;
}

// ---------------------------------------------------------------------------
// IzerginCache

namespace {
std::optional<Rational> try_f(const Rational& a, const Rational& b, const Rational& c) {
  if (a == b) return std::nullopt;
  return kernel_f(a, b, c);
}
}  // namespace

IzerginCache::IzerginCache(Params u, Params pool, const Rational& c, bool conjugated)
    : u_(u.begin(), u.end()), pool_(pool.begin(), pool.end()), c_(c), conjugated_(conjugated) {
  if (pool_.size() > kMaxGround) throw ConstraintError("pool larger than 63 elements");
  const std::size_t n = u_.size();
  const std::size_t p = pool_.size();
  fux_.resize(n * p);
  fu_pool_.resize(p);
  for (std::size_t j = 0; j < p; ++j) {
    std::optional<Rational> prod = Rational(1);
    for (std::size_t i = 0; i < n; ++i) {
      auto v = conjugated_ ? try_f(pool_[j], u_[i], c_) : try_f(u_[i], pool_[j], c_);
      fux_[i * p + j] = v;
      if (!v) prod.reset();
      else if (prod) *prod *= *v;
    }
    fu_pool_[j] = prod;
  }
  fxx_.resize(p * p);
  h_inv_xx_.resize(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t k = 0; k < p; ++k) {
      // v-side row j needs f(x_j, x_k) (conjugate: f(x_k, x_j)) and 1/h(x_j, x_k)
      // (conjugate: 1/h(x_k, x_j)).
      fxx_[j * p + k] = conjugated_ ? try_f(pool_[k], pool_[j], c_) : try_f(pool_[j], pool_[k], c_);
      const Rational h = conjugated_ ? h_(pool_[k], pool_[j], c_) : h_(pool_[j], pool_[k], c_);
      h_inv_xx_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
          h == 0 ? Rational(0) : Rational(1) / h;
    }
  }
  const auto ni = static_cast<Eigen::Index>(n);
  u_side_z_.resize(ni, ni);
  for (Eigen::Index j = 0; j < ni; ++j) {
    const Rational row = complement_product(Kernel::f, u_, j, c_, !conjugated_);
    for (Eigen::Index k = 0; k < ni; ++k)
      u_side_z_(j, k) = row / (conjugated_ ? h_(u_[k], u_[j], c_) : h_(u_[j], u_[k], c_));
  }
}

const Rational& IzerginCache::fux(int i, int j) const {
  const auto& v = fux_[static_cast<std::size_t>(i) * pool_.size() + j];
  if (!v) {
    const auto& a = conjugated_ ? pool_[j] : u_[i];
    const auto& b = conjugated_ ? u_[i] : pool_[j];
    throw PoleError("f", to_string(a), to_string(b));
  }
  return *v;
}

const Rational& IzerginCache::fxx(int j, int k) const {
  const auto& v = fxx_[static_cast<std::size_t>(j) * pool_.size() + k];
  if (!v) throw PoleError("f", to_string(pool_[j]), to_string(pool_[k]));
  return *v;
}

Rational IzerginCache::v_side(const Rational& z, const std::vector<int>& idx) const {
  const auto m = static_cast<Eigen::Index>(idx.size());
  MatrixQ a(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const int xj = idx[j];
    Rational row;
    if (fu_pool_[xj]) {
      row = *fu_pool_[xj];
    } else {
      row = 1;
      for (std::size_t i = 0; i < u_.size(); ++i) row *= fux(static_cast<int>(i), xj);
    }
    for (Eigen::Index k = 0; k < m; ++k)
      if (k != j) row *= fxx(xj, idx[k]);
    for (Eigen::Index k = 0; k < m; ++k) {
      const Rational& hinv = h_inv_xx_(xj, idx[k]);
      if (hinv == 0 && k != j)
        throw PoleError("1/h", to_string(pool_[xj]), to_string(pool_[idx[k]]));
      a(j, k) = row * hinv;
      if (j == k) a(j, k) -= z;
    }
  }
  return determinant_bareiss(a);
}

Rational IzerginCache::u_side(const Rational& z, const std::vector<int>& idx) const {
  const auto n = static_cast<Eigen::Index>(u_.size());
  MatrixQ a = -z * u_side_z_;
  for (Eigen::Index j = 0; j < n; ++j) {
    Rational d(1);
    for (int x : idx) d *= fux(static_cast<int>(j), x);
    a(j, j) += d;
  }
  const int excess = static_cast<int>(idx.size()) - static_cast<int>(n);
  return ipow(Rational(1) - z, excess) * determinant_bareiss(a);
}

Rational IzerginCache::evaluate(const Rational& z, Mask subset) const {
  std::vector<int> idx;
  for (std::size_t j = 0; j < pool_.size(); ++j)
    if (subset >> j & 1) idx.push_back(static_cast<int>(j));
  if (z != 1 && u_.size() < idx.size()) return u_side(z, idx);
  return v_side(z, idx);
}

// ---------------------------------------------------------------------------
// Rational interpolation

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Rational eval(const Poly& p, const Rational& x) {
  Rational acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Returns remainder of a / b, quotient in q.
Poly divmod(Poly a, const Poly& b, Poly* q) {
  trim(a);
  if (q) q->assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    const Rational k = a.back() / b.back();
    if (q) (*q)[shift] = k;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= k * b[i];
    trim(a);
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = divmod(a, b, nullptr);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rational lead = a.back();
    for (auto& x : a) x /= lead;
  }
  return a;
}

// One nonzero vector of the null space of `a` (rows x cols, rows < cols).
std::vector<Rational> null_vector(MatrixQ a) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  std::vector<Eigen::Index> pivot_col;
  Eigen::Index r = 0;
  for (Eigen::Index col = 0; col < cols && r < rows; ++col) {
    Eigen::Index p = r;
    while (p < rows && a(p, col) == 0) ++p;
    if (p == rows) continue;
    a.row(r).swap(a.row(p));
    const Rational lead = a(r, col);
    a.row(r) /= lead;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || a(i, col) == 0) continue;
      const Rational k = a(i, col);
      a.row(i) -= k * a.row(r);
    }
    pivot_col.push_back(col);
    ++r;
  }
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (auto pc : pivot_col) is_pivot[pc] = true;
  Eigen::Index free = 0;
  while (free < cols && is_pivot[free]) ++free;
  std::vector<Rational> x(static_cast<std::size_t>(cols), Rational(0));
  x[free] = 1;
  for (std::size_t i = 0; i < pivot_col.size(); ++i)
    x[pivot_col[i]] = -a(static_cast<Eigen::Index>(i), free);
  return x;
}

}  // namespace

RationalFunction::RationalFunction(std::vector<Rational> numerator,
                                   std::vector<Rational> denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  trim(num_);
  trim(den_);
  if (den_.empty()) throw DegenerateError("zero denominator polynomial");
}

Rational RationalFunction::operator()(const Rational& x) const {
  const Rational d = eval(den_, x);
  if (d == 0) throw PoleError("interpolant", to_string(x), "pole");
  return eval(num_, x) / d;
}

RationalFunction rational_interpolate(std::span<const std::pair<Rational, Rational>> samples,
                                      int degree_bound) {
  if (degree_bound < 0) throw DegenerateError("negative degree bound");
  const std::size_t d = static_cast<std::size_t>(degree_bound);
  if (samples.size() <= 2 * d + 1)
    throw DegenerateError("need more than " + std::to_string(2 * d + 1) + " samples, got " +
                          std::to_string(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = i + 1; j < samples.size(); ++j)
      if (samples[i].first == samples[j].first)
        throw DegenerateError("repeated interpolation point " + to_string(samples[i].first));

  // Unknowns p_0..p_d, q_0..q_d with P(x_i) - y_i Q(x_i) = 0.
  const auto rows = static_cast<Eigen::Index>(2 * d + 1);
  const auto cols = static_cast<Eigen::Index>(2 * d + 2);
  MatrixQ a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& [x, y] = samples[static_cast<std::size_t>(i)];
    Rational power(1);
    for (std::size_t k = 0; k <= d; ++k) {
      a(i, static_cast<Eigen::Index>(k)) = power;
      a(i, static_cast<Eigen::Index>(d + 1 + k)) = -y * power;
      power *= x;
    }
  }
  const auto sol = null_vector(a);
  Poly num(sol.begin(), sol.begin() + static_cast<std::ptrdiff_t>(d + 1));
  Poly den(sol.begin() + static_cast<std::ptrdiff_t>(d + 1), sol.end());
  trim(num);
  trim(den);
  if (den.empty()) throw DegenerateError("interpolant has zero denominator");
  if (!num.empty()) {
    const Poly g = poly_gcd(num, den);
    if (g.size() > 1) {
      Poly qn, qd;
      divmod(num, g, &qn);
      divmod(den, g, &qd);
      num = std::move(qn);
      den = std::move(qd);
    }
  }
  const Rational lead = den.back();
  for (auto& x : num) x /= lead;
  for (auto& x : den) x /= lead;
  if (num.empty()) den = {Rational(1)};
  for (const auto& [x, y] : samples) {
    const Rational q = eval(den, x);
    if (q == 0 || eval(num, x) != y * q)
      throw DegenerateError("samples inconsistent with degree bound " +
                            std::to_string(degree_bound));
  }
  return RationalFunction(std::move(num), std::move(den));
}

ResidueCheck residue_check(const Rational& z, Params u, Params v, const Rational& c,
                           bool conjugated) {
  if (u.empty() || v.empty())
    throw CardinalityError("residue check needs #u >= 1 and #v >= 1");
  const std::size_t n = u.size();
  const std::size_t m = v.size();
  const Rational& vm = v[m - 1];
  std::vector<Rational> ubar(u.begin(), u.end() - 1);
  std::vector<Rational> vbar(v.begin(), v.end() - 1);

  const int bound = static_cast<int>(2 * (n + m));
  const std::size_t fit = static_cast<std::size_t>(4 * (n + m) + 3);
  constexpr std::size_t kHeldOut = 3;
  // Small eps values avoiding any accidental collision of u_n with the rest.
  std::vector<Rational> others(ubar);
  others.insert(others.end(), vbar.begin(), vbar.end());
  auto usable = [&](const Rational& eps) {
    const Rational un = vm + eps;
    for (const auto& y : others) {
      const Rational diff = un - y;
      if (diff == 0 || diff == c || diff == -c) return false;
    }
    return eps != 0 && eps != c && eps != -c;
  };
  const Rational pref = conjugated ? -c : c;
  auto value = [&](const Rational& eps) {
    std::vector<Rational> uu(ubar);
    uu.push_back(vm + eps);
    const Rational k = conjugated ? conj_mod_izergin(z, uu, v, c) : mod_izergin(z, uu, v, c);
    return eps / pref * k;
  };
  std::vector<std::pair<Rational, Rational>> samples;
  std::vector<Rational> held;
  for (int k = 1; samples.size() + held.size() < fit + kHeldOut; ++k) {
    for (int sign : {1, -1}) {
      const Rational eps = Rational(sign * k, 1009);
      if (!usable(eps)) continue;
      if (samples.size() < fit) samples.emplace_back(eps, value(eps));
      else if (held.size() < kHeldOut) held.push_back(eps);
    }
  }
  const RationalFunction r = rational_interpolate(samples, bound);
  ResidueCheck out;
  out.held_out_ok = true;
  for (const auto& eps : held)
    if (r(eps) != value(eps)) out.held_out_ok = false;
  if (eval(r.denominator(), Rational(0)) == 0)
    throw DegenerateError("interpolant still has a pole at eps = 0");
  out.limit = r(Rational(0));
  if (conjugated) {
    out.predicted = prod_f(std::span<const Rational>(&vm, 1), ubar, c) *
                    prod_f(vbar, std::span<const Rational>(&vm, 1), c) *
                    conj_mod_izergin(z, ubar, vbar, c);
  } else {
    out.predicted = prod_f(ubar, std::span<const Rational>(&vm, 1), c) *
                    prod_f(std::span<const Rational>(&vm, 1), vbar, c) *
                    mod_izergin(z, ubar, vbar, c);
  }
  return out;
}

}  // namespace maba
