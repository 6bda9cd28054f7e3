#include "crlab/harmonics.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace crlab {

namespace {

using Block = std::map<std::vector<int>, std::vector<Exponent>>;

Block group_by_charge(const std::vector<Exponent>& monos) {
  Block out;
  for (const auto& e : monos) out[charge(e)].push_back(e);
  return out;
}

// Rational nullspace of A (rows x cols) via reduced row echelon form.
std::vector<std::vector<Rational>> nullspace(std::vector<std::vector<Rational>> a, std::size_t cols) {
  const std::size_t rows = a.size();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    const Rational inv = Rational(1) / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const Rational f = a[i][c];
      for (std::size_t k = 0; k < cols; ++k) {
        if (!a[r][k].is_zero()) a[i][k] -= f * a[r][k];
      }
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Rational>> out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols);
    v[free] = Rational(1);
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a[i][free];
    out.push_back(std::move(v));
  }
  return out;
}

// Exact harmonic vectors of one charge sector.
std::vector<ExactPolynomial> harmonic_sector(int n, const std::vector<Exponent>& sources) {
  const auto m = static_cast<std::size_t>(n + 1);
  std::map<Exponent, std::size_t> target_index;
  std::vector<std::vector<std::pair<Exponent, int>>> images(sources.size());
  for (std::size_t s = 0; s < sources.size(); ++s) {
    const Exponent& e = sources[s];
    for (std::size_t i = 0; i < m; ++i) {
      if (e[i] == 0 || e[m + i] == 0) continue;
      Exponent f = e;
      const int w = f[i]-- * f[m + i]--;
      target_index.try_emplace(f, target_index.size());
      images[s].emplace_back(std::move(f), w);
    }
  }
  std::vector<std::vector<Rational>> a(target_index.size(), std::vector<Rational>(sources.size()));
  for (std::size_t s = 0; s < sources.size(); ++s) {
    for (const auto& [f, w] : images[s]) a[target_index.at(f)][s] += Rational(w);
  }
  std::vector<ExactPolynomial> out;
  for (const auto& v : nullspace(std::move(a), sources.size())) {
    ExactPolynomial p(n);
    for (std::size_t s = 0; s < sources.size(); ++s) p.add_term(sources[s], v[s]);
    out.push_back(std::move(p));
  }
  return out;
}

ComplexPolynomial to_complex(const ExactPolynomial& p) {
  return p.convert<cplx>([](const Rational& r) { return cplx(r.to_double(), 0.0); });
}

// Orthonormalizes one charge sector with the closed-form Gram matrix.
std::vector<ComplexPolynomial> orthonormalize(const std::vector<ExactPolynomial>& vs) {
  const auto r = static_cast<Eigen::Index>(vs.size());
  std::vector<ComplexPolynomial> cv;
  cv.reserve(vs.size());
  for (const auto& v : vs) cv.push_back(to_complex(v));
  Eigen::MatrixXd g(r, r);
  for (Eigen::Index a = 0; a < r; ++a) {
    for (Eigen::Index b = 0; b <= a; ++b) {
      g(a, b) = g(b, a) = sphere_inner(cv[static_cast<std::size_t>(a)], cv[static_cast<std::size_t>(b)]).real();
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) throw Error("orthonormalize: Gram matrix not positive definite");
  const Eigen::MatrixXd linv = llt.matrixL().solve(Eigen::MatrixXd::Identity(r, r));
  std::vector<ComplexPolynomial> out;
  for (Eigen::Index a = 0; a < r; ++a) {
    ComplexPolynomial p(vs.front().n());
    for (Eigen::Index b = 0; b <= a; ++b) {
      if (linv(a, b) != 0.0) p += cv[static_cast<std::size_t>(b)] * cplx(linv(a, b), 0.0);
    }
    out.push_back(std::move(p));
  }
  return out;
}

// Visiting order of the (j, l) blocks: by max(j, l), then j, then l.
std::vector<BidegreeIndex> block_order(int jmax) {
  std::vector<BidegreeIndex> out;
  for (int m = 0; m <= jmax; ++m) {
    for (int j = 0; j <= m; ++j) {
      for (int l = 0; l <= m; ++l) {
        if (std::max(j, l) == m) out.push_back({j, l});
      }
    }
  }
  return out;
}

std::shared_ptr<const QuadratureRule> rule_from_id(int n, const std::string& id, int degree) {
  if (id == "none") return nullptr;
  int nn = 0;
  int gl = 0;
  int ph = 0;
  if (std::sscanf(id.c_str(), "hopf-n%d-gl%d-ph%d", &nn, &gl, &ph) != 3 || nn != n) {
    throw InvalidArgument("read_cache: unsupported quadrature id '" + id + "'");
  }
  return std::make_shared<const QuadratureRule>(build_quadrature(n, QuadratureResolution{gl, ph}, degree));
}

}  // namespace

std::vector<ExactPolynomial> exact_harmonic_block(int n, int j, int l) {
  Dimension dim(n);
  if (j < 0 || l < 0) throw InvalidArgument("exact_harmonic_block: negative bidegree");
  std::vector<ExactPolynomial> out;
  for (const auto& [c, monos] : group_by_charge(bidegree_monomials(n, j, l))) {
    auto sector = harmonic_sector(n, monos);
    for (auto& p : sector) out.push_back(std::move(p));
  }
  return out;
}

int basis_dimension(int n, int j, int l) {
  return static_cast<int>(exact_harmonic_block(n, j, l).size());
}

HarmonicBasis::HarmonicBasis(int n, int jmax, std::vector<BasisElement> elements,
                             std::shared_ptr<const QuadratureRule> rule)
    : n_(n), jmax_(jmax), elements_(std::move(elements)), rule_(std::move(rule)) {
  prefix_.assign(static_cast<std::size_t>(jmax + 1), 0);
  for (const auto& e : elements_) {
    const int m = std::max(e.index.j, e.index.l);
    if (m > jmax) throw InvalidArgument("HarmonicBasis: element beyond cutoff");
    for (int c = m; c <= jmax; ++c) ++prefix_[static_cast<std::size_t>(c)];
  }
}

const QuadratureRule& HarmonicBasis::rule() const {
  if (!rule_) throw InvalidArgument("harmonic basis has no quadrature rule");
  return *rule_;
}

std::size_t HarmonicBasis::size_upto(int cutoff) const {
  if (cutoff < 0) return 0;
  if (cutoff > jmax_) {
    throw CutoffExceeded("cutoff " + std::to_string(cutoff) + " exceeds basis J_max " + std::to_string(jmax_));
  }
  return prefix_[static_cast<std::size_t>(cutoff)];
}

const Eigen::MatrixXcd& HarmonicBasis::node_values() const {
  if (node_values_) return *node_values_;
  (void)rule();
  const auto nodes = static_cast<Eigen::Index>(rule_->size());
  const auto m = static_cast<std::size_t>(n_ + 1);
  const int maxpow = 2 * jmax_ + 1;
  Eigen::MatrixXcd vals(nodes, static_cast<Eigen::Index>(elements_.size()));
  // powers[i][a] = z_i^a and conj
  std::vector<std::vector<cplx>> zp(m, std::vector<cplx>(static_cast<std::size_t>(maxpow)));
  std::vector<std::vector<cplx>> zbp(m, std::vector<cplx>(static_cast<std::size_t>(maxpow)));
  for (Eigen::Index k = 0; k < nodes; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      const cplx z = rule_->nodes()(static_cast<Eigen::Index>(i), k);
      zp[i][0] = zbp[i][0] = 1.0;
      for (std::size_t a = 1; a < static_cast<std::size_t>(maxpow); ++a) {
        zp[i][a] = zp[i][a - 1] * z;
        zbp[i][a] = zbp[i][a - 1] * std::conj(z);
      }
    }
    for (std::size_t b = 0; b < elements_.size(); ++b) {
      cplx sum = 0.0;
      for (const auto& [e, c] : elements_[b].poly.terms()) {
        cplx t = c;
        for (std::size_t i = 0; i < m; ++i) {
          t *= zp[i][static_cast<std::size_t>(e[i])] * zbp[i][static_cast<std::size_t>(e[m + i])];
        }
        sum += t;
      }
      vals(k, static_cast<Eigen::Index>(b)) = sum;
    }
  }
  node_values_ = std::move(vals);
  return *node_values_;
}

void HarmonicBasis::write_cache(std::ostream& os) const {
  os << "# crlab-harmonic-basis version=1 n=" << n_ << " jmax=" << jmax_ << " quadrature="
     << (rule_ ? rule_->id() : std::string("none")) << " degree=" << (rule_ ? rule_->degree() : -1) << '\n';
  os << std::setprecision(17);
  for (const auto idx : block_order(jmax_)) {
    const auto [b, e] = block_range(*this, idx);
    os << "block " << idx.j << ' ' << idx.l << ' ' << (e - b) << '\n';
    for (std::size_t k = b; k < e; ++k) {
      const auto& poly = elements_[k].poly;
      os << "element " << poly.size() << '\n';
      for (const auto& [ex, c] : poly.terms()) {
        for (int x : ex) os << x << ' ';
        os << c.real() << ' ' << c.imag() << '\n';
      }
    }
  }
}

HarmonicBasis HarmonicBasis::read_cache(std::istream& is) {
  std::string header;
  std::getline(is, header);
  int version = 0;
  int n = 0;
  int jmax = -1;
  int degree = -1;
  std::string qid;
  {
    std::istringstream hs(header);
    std::string tok;
    hs >> tok >> tok;
    if (tok != "crlab-harmonic-basis") throw InvalidArgument("read_cache: not a basis cache");
    while (hs >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = tok.substr(0, eq);
      const std::string val = tok.substr(eq + 1);
      if (key == "version") version = std::stoi(val);
      else if (key == "n") n = std::stoi(val);
      else if (key == "jmax") jmax = std::stoi(val);
      else if (key == "quadrature") qid = val;
      else if (key == "degree") degree = std::stoi(val);
    }
  }
  if (version != 1) throw InvalidArgument("read_cache: unsupported version");
  if (n < 1 || jmax < 0) throw InvalidArgument("read_cache: malformed header");
  std::vector<BasisElement> elements;
  const std::size_t width = 2 * static_cast<std::size_t>(n + 1);
  for (const auto idx : block_order(jmax)) {
    std::string tag;
    int j = 0;
    int l = 0;
    std::size_t count = 0;
    if (!(is >> tag >> j >> l >> count) || tag != "block" || j != idx.j || l != idx.l) {
      throw InvalidArgument("read_cache: block header mismatch");
    }
    for (std::size_t k = 0; k < count; ++k) {
      std::size_t terms = 0;
      if (!(is >> tag >> terms) || tag != "element") throw InvalidArgument("read_cache: bad element");
      ComplexPolynomial p(n);
      for (std::size_t t = 0; t < terms; ++t) {
        Exponent e(width);
        for (auto& x : e) is >> x;
        double re = 0.0;
        double im = 0.0;
        if (!(is >> re >> im)) throw InvalidArgument("read_cache: truncated element");
        p.add_term(e, cplx(re, im));
      }
      elements.push_back({idx, std::move(p)});
    }
  }
  return {n, jmax, std::move(elements), rule_from_id(n, qid, degree)};
}

int default_quadrature_degree(int jmax) { return 4 * jmax + 4; }

HarmonicBasis build_basis(int n, int jmax, std::optional<int> quadrature_degree) {
  Dimension dim(n);
  const int degree = quadrature_degree.value_or(default_quadrature_degree(jmax));
  return build_basis(n, jmax, std::make_shared<const QuadratureRule>(build_quadrature(n, degree)));
}

HarmonicBasis build_basis(int n, int jmax, std::shared_ptr<const QuadratureRule> rule) {
  Dimension dim(n);
  if (jmax < 0) throw InvalidArgument("build_basis: J_max must be >= 0");
  if (rule && rule->n() != n) throw InvalidArgument("build_basis: quadrature dimension mismatch");
  if (rule && rule->degree() < 4 * jmax) {
    throw QuadratureInsufficient("build_basis: quadrature degree " + std::to_string(rule->degree()) +
                                 " < " + std::to_string(4 * jmax));
  }
  std::vector<BasisElement> elements;
  for (const auto idx : block_order(jmax)) {
    for (const auto& [c, monos] : group_by_charge(bidegree_monomials(n, idx.j, idx.l))) {
      const auto sector = harmonic_sector(n, monos);
      if (sector.empty()) continue;
      for (auto& p : orthonormalize(sector)) elements.push_back({idx, std::move(p)});
    }
  }
  return {n, jmax, std::move(elements), std::move(rule)};
}

HarmonicBasis build_algebraic_basis(int n, int jmax) { return build_basis(n, jmax, nullptr); }

std::pair<std::size_t, std::size_t> block_range(const HarmonicBasis& basis, BidegreeIndex idx) {
  const auto& el = basis.elements();
  const auto first = std::find_if(el.begin(), el.end(), [&](const BasisElement& e) { return e.index == idx; });
  if (first == el.end()) return {0, 0};
  const auto last = std::find_if(first, el.end(), [&](const BasisElement& e) { return !(e.index == idx); });
  return {static_cast<std::size_t>(first - el.begin()), static_cast<std::size_t>(last - el.begin())};
}

HarmonicExpansion HarmonicExpansion::zero(const HarmonicBasis& basis, int jmax) {
  return {basis.n(), jmax, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size_upto(jmax)))};
}

HarmonicExpansion HarmonicExpansion::widened(const HarmonicBasis& basis, int jmax) const {
  if (jmax < jmax_) throw InvalidArgument("widened: new cutoff is smaller");
  HarmonicExpansion out = zero(basis, jmax);
  out.c_.head(c_.size()) = c_;
  return out;
}

HarmonicExpansion& HarmonicExpansion::operator+=(const HarmonicExpansion& o) {
  if (o.c_.size() > c_.size()) {
    const auto old = c_.size();
    c_.conservativeResize(o.c_.size());
    c_.tail(c_.size() - old).setZero();
  }
  if (o.jmax_ > jmax_) jmax_ = o.jmax_;
  c_.head(o.c_.size()) += o.c_;
  return *this;
}

HarmonicExpansion& HarmonicExpansion::operator-=(const HarmonicExpansion& o) {
  HarmonicExpansion neg = o;
  neg.c_ = -neg.c_;
  return *this += neg;
}

HarmonicExpansion analyze(const Eigen::VectorXcd& node_values, const HarmonicBasis& basis,
                          std::optional<int> cutoff) {
  const int j = cutoff.value_or(basis.jmax());
  const auto m = static_cast<Eigen::Index>(basis.size_upto(j));
  if (node_values.size() != static_cast<Eigen::Index>(basis.rule().size())) {
    throw InvalidArgument("analyze: sample count mismatch");
  }
  const Eigen::VectorXcd weighted = node_values.cwiseProduct(basis.rule().weights().cast<cplx>());
  Eigen::VectorXcd c = basis.node_values().leftCols(m).adjoint() * weighted;
  return {basis.n(), j, std::move(c)};
}

Eigen::VectorXcd synthesize(const HarmonicExpansion& e, const HarmonicBasis& basis) {
  const auto m = e.coeffs().size();
  return basis.node_values().leftCols(m) * e.coeffs();
}

cplx synthesize_at(const HarmonicExpansion& e, const HarmonicBasis& basis, const SpherePoint& point) {
  cplx sum = 0.0;
  for (Eigen::Index k = 0; k < e.coeffs().size(); ++k) {
    if (e.coeffs()[k] == cplx(0.0)) continue;
    sum += e.coeffs()[k] * basis[static_cast<std::size_t>(k)].poly.evaluate(point.coords());
  }
  return sum;
}

std::vector<cplx> synthesize(const HarmonicExpansion& e, const HarmonicBasis& basis,
                             const std::vector<SpherePoint>& points) {
  const ComplexPolynomial p = to_polynomial(e, basis);
  std::vector<cplx> out;
  out.reserve(points.size());
  for (const auto& s : points) out.push_back(p.evaluate(s.coords()));
  return out;
}

ComplexPolynomial to_polynomial(const HarmonicExpansion& e, const HarmonicBasis& basis) {
  ComplexPolynomial p(basis.n());
  for (Eigen::Index k = 0; k < e.coeffs().size(); ++k) {
    if (e.coeffs()[k] == cplx(0.0)) continue;
    p += basis[static_cast<std::size_t>(k)].poly * e.coeffs()[k];
  }
  return p;
}

HarmonicExpansion project_polynomial(const ComplexPolynomial& p, const HarmonicBasis& basis, int cutoff) {
  HarmonicExpansion out = HarmonicExpansion::zero(basis, cutoff);
  for (Eigen::Index k = 0; k < out.coeffs().size(); ++k) {
    const cplx c = sphere_inner(p, basis[static_cast<std::size_t>(k)].poly);
    out.coeffs()[k] = std::abs(c) < 1e-13 ? cplx(0.0) : c;
  }
  return out;
}

HarmonicExpansion multiply_by_coordinate(const HarmonicExpansion& e, int i, const HarmonicBasis& basis,
                                         bool conjugate) {
  if (i < 0 || i > basis.n()) throw InvalidArgument("multiply_by_coordinate: index out of range");
  const int target = e.jmax() + 1;
  if (target > basis.jmax()) {
    throw CutoffExceeded("multiply_by_coordinate: needs J_max " + std::to_string(target));
  }
  return project_polynomial(to_polynomial(e, basis).times_coordinate(i, conjugate), basis, target);
}

HarmonicExpansion random_expansion(const HarmonicBasis& basis, int jmax, std::mt19937_64& rng,
                                   bool real_valued) {
  std::normal_distribution<double> g(0.0, 1.0);
  HarmonicExpansion out = HarmonicExpansion::zero(basis, jmax);
  for (Eigen::Index k = 0; k < out.coeffs().size(); ++k) {
    const double re = g(rng);
    const double im = g(rng);
    out.coeffs()[k] = cplx(re, im);
  }
  return real_valued ? real_part(out, basis) : out;
}

HarmonicExpansion real_part(const HarmonicExpansion& e, const HarmonicBasis& basis) {
  const ComplexPolynomial p = to_polynomial(e, basis);
  ComplexPolynomial r = (p + p.conjugate()) * cplx(0.5, 0.0);
  return project_polynomial(r, basis, e.jmax());
}

}  // namespace crlab
