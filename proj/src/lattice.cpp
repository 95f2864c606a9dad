#include "fracspec/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "fracspec/errors.hpp"
#include "fracspec/phase_sum.hpp"

namespace fracspec {

namespace {

RatMat checked_inverse(const RatMat& basis) {
  if (basis.dim() == 0) throw std::invalid_argument("Lattice: dimension must be positive");
  if (basis.determinant() == 0) throw std::invalid_argument("Lattice: singular basis");
  return basis.inverse();
}

bool contains_vec(const std::vector<RatVec>& list, const RatVec& v) {
  return std::find(list.begin(), list.end(), v) != list.end();
}

}  // namespace

Lattice::Lattice(RatMat basis) : basis_(std::move(basis)), inverse_(checked_inverse(basis_)) {}

Lattice Lattice::integer(std::size_t dim) { return Lattice(RatMat::identity(dim)); }

Lattice Lattice::scaled(std::size_t dim, const Rational& scale) {
  return Lattice(RatMat::diagonal(RatVec(dim, scale)));
}

Rational Lattice::covolume() const { return abs(basis_.determinant()); }

RatVec Lattice::coordinates(const RatVec& x) const { return inverse_ * x; }

bool Lattice::contains(const RatVec& x) const { return all_integer(coordinates(x)); }

bool Lattice::subset_of(const Lattice& other) const {
  for (const auto& u : basis_.columns())
    if (!other.contains(u)) return false;
  return true;
}

bool Lattice::same_as(const Lattice& other) const { return subset_of(other) && other.subset_of(*this); }

RatVec Lattice::reduce(const RatVec& x) const {
  RatVec c = coordinates(x);
  for (auto& ci : c) ci = frac_part(ci);
  return basis_ * c;
}

Lattice dual_lattice(const Lattice& lat) { return Lattice(lat.basis_inverse().transpose()); }

Integer LatticeInclusion::index() const { return numerator(Rational(abs(R.determinant()))); }

LatticeInclusion inclusion_matrix(const Lattice& sub, const Lattice& super) {
  if (sub.dim() != super.dim()) throw NotASublattice("dimension mismatch");
  // Columns of V⁻¹U are the coordinates of u_i over v, i.e. Rᵀ.
  const RatMat coords = super.basis_inverse() * sub.basis();
  if (!coords.is_integer()) throw NotASublattice("a generator of the sublattice has non-integer coordinates");
  return LatticeInclusion{sub, super, coords.transpose()};
}

std::vector<RatVec> coset_representatives(const Lattice& sub, const Lattice& super,
                                          const std::optional<std::vector<RatVec>>& given) {
  const LatticeInclusion inc = inclusion_matrix(sub, super);
  const Integer index = inc.index();
  const std::size_t d = sub.dim();

  if (given) {
    if (Integer(given->size()) != index)
      throw BadSection("expected " + index.str() + " representatives, got " + std::to_string(given->size()));
    std::set<RatVec> keys;
    for (const auto& x : *given) {
      if (x.size() != d) throw BadSection("representative " + format_vec(x) + " has wrong dimension");
      if (!super.contains(x)) throw BadSection(format_vec(x) + " is not in the larger lattice");
      if (!keys.insert(sub.reduce(x)).second) throw BadSection(format_vec(x) + " duplicates a coset");
    }
    return *given;
  }

  // index·Z^d (in super coordinates) lies inside the sublattice, so every
  // coset has a representative with coordinates in [0, index)^d.
  const long bound = index.convert_to<long>();
  std::vector<RatVec> reps;
  std::set<RatVec> keys;
  std::vector<long> c(d, 0);
  while (true) {
    RatVec coords(d);
    for (std::size_t i = 0; i < d; ++i) coords[i] = c[i];
    const RatVec x = super.basis() * coords;
    if (keys.insert(sub.reduce(x)).second) {
      reps.push_back(x);
      if (Integer(reps.size()) == index) break;
    }
    std::size_t k = d;
    while (k-- > 0) {
      if (++c[k] < bound) break;
      c[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return reps;
}

SimpleFactorSpec::SimpleFactorSpec(std::string name, Lattice K, Lattice A, Lattice Gamma,
                                   std::vector<RatVec> digits_B, std::vector<RatVec> digits_L)
    : name_(std::move(name)),
      K_(std::move(K)),
      A_(std::move(A)),
      Gamma_(std::move(Gamma)),
      digits_B_(std::move(digits_B)),
      digits_L_(std::move(digits_L)) {
  if (A_.dim() != K_.dim() || Gamma_.dim() != K_.dim())
    throw std::invalid_argument("SimpleFactorSpec: lattices of different dimension");
  for (const auto* digits : {&digits_B_, &digits_L_})
    for (const auto& v : *digits)
      if (v.size() != K_.dim()) throw std::invalid_argument("SimpleFactorSpec: digit of wrong dimension");
  E_ = K_.basis() * Gamma_.basis_inverse();
  Et_ = E_.transpose();
  E_inv_ = E_.inverse();
  Et_inv_ = Et_.inverse();
}

std::optional<std::size_t> SimpleFactorSpec::digit_index(const RatVec& ell) const {
  const auto it = std::find(digits_L_.begin(), digits_L_.end(), ell);
  if (it == digits_L_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - digits_L_.begin());
}

RatMat expansion_map(const SimpleFactorSpec& spec) { return spec.E(); }

RatVec tau_apply(const SimpleFactorSpec& spec, const RatVec& ell, const RatVec& s) {
  if (!spec.digit_index(ell)) throw UnknownDigit(format_vec(ell) + " is not in L");
  return add(spec.E_transpose() * s, ell);
}

RealVec tau_apply(const SimpleFactorSpec& spec, const RatVec& ell, const RealVec& s) {
  if (!spec.digit_index(ell)) throw UnknownDigit(format_vec(ell) + " is not in L");
  const auto et = spec.E_transpose().to_real();
  RealVec out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    out[i] = to_double(ell[i]);
    for (std::size_t j = 0; j < s.size(); ++j) out[i] += et[i][j] * s[j];
  }
  return out;
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

const ValidationCheck* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

bool ValidationReport::passed(const std::string& name) const {
  const auto* c = find(name);
  return c && c->passed;
}

ValidationReport validate_simple_factor(const SimpleFactorSpec& spec) {
  ValidationReport report;
  auto record = [&](std::string name, bool passed, std::string detail) {
    report.checks.push_back({std::move(name), passed, std::move(detail)});
  };

  const auto& B = spec.digits_B();
  const auto& L = spec.digits_L();
  const RatVec zero(spec.dim(), Rational(0));

  // chain K ⊆ A ⊆ Γ
  std::optional<Integer> index_AK;
  {
    std::string detail;
    bool ok = true;
    try {
      index_AK = inclusion_matrix(spec.K(), spec.A()).index();
    } catch (const NotASublattice&) {
      ok = false;
      detail += "K is not contained in A. ";
    }
    try {
      inclusion_matrix(spec.A(), spec.Gamma());
    } catch (const NotASublattice&) {
      ok = false;
      detail += "A is not contained in Gamma. ";
    }
    if (ok) detail = "[A:K] = " + index_AK->str();
    record("chain", ok, detail);
  }

  // B is a section of A/K containing 0
  {
    bool ok = contains_vec(B, zero);
    std::string detail = ok ? "" : "0 is not in B. ";
    if (index_AK) {
      try {
        coset_representatives(spec.K(), spec.A(), B);
      } catch (const BadSection& e) {
        ok = false;
        detail += e.what();
      }
    } else {
      ok = false;
      detail += "no section without K ⊆ A";
    }
    record("section_B", ok, detail);
  }

  // L ⊂ K⁰, distinct mod Γ⁰, 0 ∈ L
  {
    const Lattice K0 = dual_lattice(spec.K());
    const Lattice Gamma0 = dual_lattice(spec.Gamma());
    bool ok = contains_vec(L, zero);
    std::string detail = ok ? "" : "0 is not in L. ";
    std::set<RatVec> keys;
    for (const auto& ell : L) {
      if (!K0.contains(ell)) {
        ok = false;
        detail += format_vec(ell) + " is not in the dual of K. ";
      }
      if (!keys.insert(Gamma0.reduce(ell)).second) {
        ok = false;
        detail += format_vec(ell) + " repeats a class mod the dual of Gamma. ";
      }
    }
    record("dual_L", ok, detail);
  }

  // |L| = |B| = [A:K]
  {
    const bool ok = L.size() == B.size() && index_AK && Integer(B.size()) == *index_AK;
    record("cardinality", ok,
           "|B| = " + std::to_string(B.size()) + ", |L| = " + std::to_string(L.size()) +
               ", [A:K] = " + (index_AK ? index_AK->str() : std::string("undefined")));
  }

  // every pair of distinct frequency digits is told apart by some b ∈ B
  {
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < L.size(); ++i)
      for (std::size_t j = i + 1; j < L.size(); ++j) {
        const RatVec diff = sub(L[i], L[j]);
        const bool separated =
            std::any_of(B.begin(), B.end(), [&](const RatVec& b) { return !is_integer(dot(diff, b)); });
        if (!separated) {
          ok = false;
          detail += "B does not separate " + format_vec(L[i]) + " and " + format_vec(L[j]) + ". ";
        }
      }
    record("separation", ok, detail);
  }

  // H_{b,ℓ} = N^{-1/2} e^{i2π b·ℓ} unitary
  {
    double residual = std::numeric_limits<double>::infinity();
    if (L.size() == B.size() && !B.empty()) {
      residual = 0.0;
      const double n = static_cast<double>(B.size());
      for (std::size_t i = 0; i < B.size(); ++i)
        for (std::size_t j = 0; j < B.size(); ++j) {
          Complex s(0.0, 0.0);
          const RatVec db = sub(B[i], B[j]);
          for (const auto& ell : L) s += unit_phase(dot(db, ell));
          s /= n;
          residual = std::max(residual, std::abs(s - Complex(i == j ? 1.0 : 0.0, 0.0)));
        }
    }
    report.hadamard_residual = residual;
    record("unitarity", residual < 1e-12, "max |HH* - I| = " + std::to_string(residual));
  }

  // every eigenvalue of E outside the unit circle
  {
    const auto moduli = spec.E().eigenvalue_moduli();
    const double smallest = *std::min_element(moduli.begin(), moduli.end());
    record("expansive", smallest > 1.0, "min |eigenvalue(E)| = " + std::to_string(smallest));
  }

  report.degenerate = spec.K().same_as(spec.A());
  return report;
}

}  // namespace fracspec
