#include "grasslab/classify.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "grasslab/error.hpp"

namespace grasslab {
namespace {

std::set<int> strip_unit(const std::set<int>& grades) {
  std::set<int> out = grades;
  out.erase(0);
  return out;
}

Subspace span_of(int n, const Field& field, const std::set<int>& grades) {
  return graded_span(n, field, strip_unit(grades), grades.count(0) > 0);
}

/// Closes a grade set under the stability rules (the unit grade is inert).
void close_grade_set(std::set<int>& grades, int n) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int s : std::set<int>(grades)) {
      if (s == 0) continue;
      if (s + 2 <= n && grades.insert(s + 2).second) changed = true;
      if ((s & 1) && s + 1 <= n && grades.insert(s + 1).second) changed = true;
    }
  }
}

std::string format_set(const std::set<int>& S) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (int s : S) {
    if (!first) out << ',';
    out << s;
    first = false;
  }
  out << '}';
  return out.str();
}

std::vector<Multivector> row_elements(const Subspace& B) {
  std::vector<Multivector> out;
  out.reserve(B.rows().size());
  for (const CoordVector& row : B.rows()) out.push_back(from_coords(row));
  return out;
}

}  // namespace

CanonicalForm CanonicalForm::zero() { return CanonicalForm{}; }

CanonicalForm CanonicalForm::form_a(int j) {
  CanonicalForm f;
  f.kind = FormKind::FormA;
  f.j = j;
  validate_form(f);
  return f;
}

CanonicalForm CanonicalForm::form_b(int j, std::set<int> S, int i) {
  CanonicalForm f;
  f.kind = FormKind::FormB;
  f.j = j;
  f.S = std::move(S);
  f.i = i;
  validate_form(f);
  return f;
}

CanonicalForm CanonicalForm::form_c(CanonicalForm inner) {
  CanonicalForm f;
  f.kind = FormKind::FormC;
  f.inner = std::make_shared<const CanonicalForm>(std::move(inner));
  validate_form(f);
  return f;
}

CanonicalForm CanonicalForm::subalg_a(int j) {
  CanonicalForm f;
  f.kind = FormKind::SubalgA;
  f.j = j;
  validate_form(f);
  return f;
}

CanonicalForm CanonicalForm::subalg_b(int j, std::set<int> S, int i) {
  CanonicalForm f;
  f.kind = FormKind::SubalgB;
  f.j = j;
  f.S = std::move(S);
  f.i = i;
  validate_form(f);
  return f;
}

void validate_form(const CanonicalForm& form) {
  switch (form.kind) {
    case FormKind::Zero:
      return;
    case FormKind::FormA:
    case FormKind::SubalgA:
      if (form.j <= 0 || (form.j & 1)) {
        throw Error(ErrorKind::InvalidForm,
                    "ladder start j must be even and positive, got j=" +
                        std::to_string(form.j));
      }
      return;
    case FormKind::FormB:
    case FormKind::SubalgB: {
      if (form.j <= 0 || !(form.j & 1)) {
        throw Error(ErrorKind::InvalidForm,
                    "j must be odd and positive, got j=" +
                        std::to_string(form.j));
      }
      if (form.S.empty() || *form.S.begin() != form.j) {
        throw Error(ErrorKind::InvalidForm,
                    "S must contain j as its least element");
      }
      if (form.i <= 0 || (form.i & 1) || form.i > form.j + 1) {
        throw Error(ErrorKind::InvalidForm,
                    "i must be even with 0 < i <= j+1, got i=" +
                        std::to_string(form.i));
      }
      return;
    }
    case FormKind::FormC: {
      if (!form.inner) {
        throw Error(ErrorKind::InvalidForm, "FormC requires an inner form");
      }
      FormKind k = form.inner->kind;
      if (k != FormKind::Zero && k != FormKind::FormA && k != FormKind::FormB) {
        throw Error(ErrorKind::InvalidForm,
                    "FormC wraps Zero, FormA or FormB only");
      }
      validate_form(*form.inner);
      return;
    }
  }
  throw Error(ErrorKind::InvalidForm, "unknown form kind");
}

std::string describe(const CanonicalForm& form) {
  std::ostringstream out;
  switch (form.kind) {
    case FormKind::Zero:
      return "Zero";
    case FormKind::FormA:
      out << "A(j=" << form.j << ')';
      break;
    case FormKind::FormB:
      out << "B(j=" << form.j << ",S=" << format_set(form.S)
          << ",i=" << form.i << ')';
      break;
    case FormKind::FormC:
      out << "C(" << describe(*form.inner) << ')';
      break;
    case FormKind::SubalgA:
      out << "SubalgA(j=" << form.j << ')';
      break;
    case FormKind::SubalgB:
      out << "SubalgB(j=" << form.j << ",S=" << format_set(form.S)
          << ",i=" << form.i << ')';
      break;
  }
  return out.str();
}

std::set<int> form_grades(const CanonicalForm& form, int n) {
  std::set<int> grades;
  switch (form.kind) {
    case FormKind::Zero:
      break;
    case FormKind::SubalgA:
      grades.insert(0);
      [[fallthrough]];
    case FormKind::FormA:
      for (int g = form.j; g <= n; g += 2) grades.insert(g);
      break;
    case FormKind::FormB:
    case FormKind::SubalgB:
      for (int s : form.S) {
        if (s <= n) grades.insert(s);
      }
      for (int g = form.i; g <= n; g += 2) grades.insert(g);
      break;
    case FormKind::FormC:
      grades = form_grades(*form.inner, n);
      grades.insert(0);
      break;
  }
  return grades;
}

Subspace realize(const CanonicalForm& form, int n, const Field& field) {
  validate_form(form);
  check_generator_count(n);
  return span_of(n, field, form_grades(form, n));
}

GradedProfile graded_profile(const Subspace& B) {
  int n = B.generators();
  GradedProfile profile;
  Multivector one = Multivector::unit(n, B.field());
  profile.contains_unit = member(B, to_coords(one));
  int full_dim = profile.contains_unit ? 1 : 0;
  for (int g = 1; g <= n; ++g) {
    bool full = true;
    int count = 0;
    for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << n); ++mask) {
      if (std::popcount(mask) != g) continue;
      ++count;
      if (full) {
        Multivector blade = Multivector::blade(n, B.field(), mask);
        full = member(B, to_coords(blade));
      }
    }
    if (full) {
      profile.grades.insert(g);
      full_dim += count;
    }
  }
  profile.exact = (B.dim() == full_dim);
  return profile;
}

bool stable_grade_set(const std::set<int>& grades, int n) {
  for (int s : grades) {
    if (s == 0) continue;
    if (s + 2 <= n && !grades.count(s + 2)) return false;
    if ((s & 1) && s + 1 <= n && !grades.count(s + 1)) return false;
  }
  return true;
}

bool sum_closed_grade_set(const std::set<int>& grades, int n) {
  for (int s : grades) {
    for (int t : grades) {
      if (t < s) continue;
      if (s + t <= n && !grades.count(s + t)) return false;
    }
  }
  return true;
}

std::vector<std::pair<CanonicalForm, Subspace>> enumerate_stable_subspaces(
    int n, const Field& field) {
  check_generator_count(n);
  std::vector<std::pair<CanonicalForm, Subspace>> out;
  auto add = [&](const CanonicalForm& form) {
    Subspace realization = realize(form, n, field);
    for (const auto& [f, sub] : out) {
      if (sub == realization) return;
    }
    out.emplace_back(form, std::move(realization));
  };
  add(CanonicalForm::zero());
  add(CanonicalForm::form_c(CanonicalForm::zero()));
  for (int j = 2; j <= n; j += 2) {
    add(CanonicalForm::form_a(j));
    add(CanonicalForm::form_c(CanonicalForm::form_a(j)));
  }
  for (int j = 1; j <= n; j += 2) {
    std::set<int> tail;
    for (int s = j; s <= n; s += 2) tail.insert(s);
    for (int i = 2; i <= j + 1; i += 2) {
      add(CanonicalForm::form_b(j, tail, i));
      add(CanonicalForm::form_c(CanonicalForm::form_b(j, tail, i)));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second.compare(b.second) < 0;
  });
  return out;
}

std::vector<NamedAutomorphism> witness_family(int n, const Field& field) {
  check_generator_count(n);
  std::vector<NamedAutomorphism> family;
  for (int k = 1; k <= n; ++k) {
    family.push_back({"sign_flip({" + std::to_string(k) + "})",
                      sign_flip(n, field, {k})});
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      family.push_back({"transposition(" + std::to_string(i) + "," +
                            std::to_string(j) + ")",
                        transposition(n, field, i, j)});
    }
  }
  for (int k = 1; k <= n; ++k) {
    family.push_back({"inner(e" + std::to_string(k) + ")",
                      inner_automorphism(Multivector::generator(n, field, k))});
  }
  for (int a = 2; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      family.push_back({"shear(" + std::to_string(a) + "," +
                            std::to_string(b) + ")",
                        shear(n, field, a, b)});
    }
  }
  return family;
}

StabilityCertificate decide_stable(const Subspace& B, int random_trials,
                                   std::uint64_t seed) {
  int n = B.generators();
  const Field& field = B.field();
  for (const auto& [form, sub] : enumerate_stable_subspaces(n, field)) {
    if (sub == B) {
      StabilityCertificate cert;
      cert.verdict = Verdict::Stable;
      cert.matched_form = form;
      return cert;
    }
  }
  std::vector<Multivector> basis = row_elements(B);
  auto hunt = [&](const std::string& name,
                  const AlgebraMap& sigma) -> std::optional<Witness> {
    for (const Multivector& v : basis) {
      Multivector image = sigma.apply(v);
      if (!member(B, to_coords(image))) {
        return Witness{name, sigma, v, image};
      }
    }
    return std::nullopt;
  };
  for (const NamedAutomorphism& named : witness_family(n, field)) {
    if (auto w = hunt(named.name, named.map)) {
      StabilityCertificate cert;
      cert.verdict = Verdict::Unstable;
      cert.witness = std::move(w);
      return cert;
    }
  }
  AutomorphismSampler sampler(n, field, seed);
  for (int t = 0; t < random_trials; ++t) {
    AlgebraMap sigma = sampler.next();
    std::string name = "random(seed=" + std::to_string(seed) +
                       ",index=" + std::to_string(t) + ")";
    if (auto w = hunt(name, sigma)) {
      StabilityCertificate cert;
      cert.verdict = Verdict::Unstable;
      cert.witness = std::move(w);
      return cert;
    }
  }
  throw Error(ErrorKind::ClassificationAnomaly,
              "subspace matches no canonical form, yet the witness family and " +
                  std::to_string(random_trials) + " random draws (seed " +
                  std::to_string(seed) + ") found no violation");
}

Subspace stable_hull(const Subspace& B) {
  int n = B.generators();
  const Field& field = B.field();
  std::set<int> grades;
  auto absorb = [&](const Multivector& v) {
    for (const auto& [mask, coeff] : v.terms()) {
      grades.insert(std::popcount(mask));
    }
  };
  for (const Multivector& v : row_elements(B)) absorb(v);
  std::vector<NamedAutomorphism> family = witness_family(n, field);
  while (true) {
    close_grade_set(grades, n);
    Subspace hull = span_of(n, field, grades);
    bool escaped = false;
    for (const NamedAutomorphism& named : family) {
      for (const CoordVector& row : hull.rows()) {
        Multivector image = named.map.apply(from_coords(row));
        if (!member(hull, to_coords(image))) {
          absorb(image);
          escaped = true;
        }
      }
      if (escaped) break;
    }
    if (!escaped) return hull;
  }
}

bool is_wedge_closed(const Subspace& B, bool unital) {
  int n = B.generators();
  if (unital &&
      !member(B, to_coords(Multivector::unit(n, B.field())))) {
    return false;
  }
  std::vector<Multivector> basis = row_elements(B);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      Multivector w = wedge(basis[i], basis[j]);
      if (!w.is_zero() && !member(B, to_coords(w))) return false;
    }
  }
  return true;
}

std::string format_discrepancy(const DiscrepancyEntry& entry) {
  std::ostringstream out;
  out << "DISCREPANCY n=" << entry.n << " form=" << describe(entry.form)
      << " reason=" << entry.reason;
  return out.str();
}

SubalgebraEnumeration enumerate_stable_subalgebras(int n, const Field& field,
                                                   bool unital) {
  check_generator_count(n);
  std::vector<CanonicalForm> candidates;
  for (int j = 2; j <= n; j += 2) {
    if (!unital) candidates.push_back(CanonicalForm::form_a(j));
    candidates.push_back(CanonicalForm::subalg_a(j));
  }
  if (unital) {
    // Empty ladder: the unit line alone.
    candidates.push_back(CanonicalForm::subalg_a((n & 1) ? n + 1 : n + 2));
  }
  for (int j = 1; j <= n; j += 2) {
    std::vector<int> pool;
    for (int t = j + 1; t <= n; ++t) pool.push_back(t);
    for (std::uint32_t bits = 0; bits < (std::uint32_t(1) << pool.size());
         ++bits) {
      std::set<int> S{j};
      for (std::size_t b = 0; b < pool.size(); ++b) {
        if ((bits >> b) & 1) S.insert(pool[b]);
      }
      for (int i = 2; i <= j + 1; i += 2) {
        candidates.push_back(CanonicalForm::subalg_b(j, S, i));
      }
    }
  }

  SubalgebraEnumeration out;
  std::set<std::set<int>> seen;
  for (const CanonicalForm& form : candidates) {
    std::set<int> grades = form_grades(form, n);
    if (unital && form.kind == FormKind::SubalgB) grades.insert(0);
    bool closed = sum_closed_grade_set(grades, n);
    bool stable = stable_grade_set(grades, n);
    bool good = closed && stable && (!unital || grades.count(0) > 0);
    bool predicted = true;
    if (form.kind == FormKind::SubalgB) {
      for (int s : form.S) {
        if (s + form.i <= n && !form.S.count(s + form.i)) {
          predicted = false;
          break;
        }
      }
    }
    if (good && seen.insert(grades).second) {
      Subspace realization = span_of(n, field, grades);
      if (!is_wedge_closed(realization, unital)) {
        throw Error(ErrorKind::ClassificationAnomaly,
                    "graded closure check disagrees with the direct product "
                    "check for " + describe(form));
      }
      out.results.emplace_back(form, std::move(realization));
    }
    if (predicted != good) {
      std::ostringstream reason;
      if (predicted) {
        reason << "shift condition holds but the realization "
               << format_set(grades) << " is not a stable subalgebra: ";
        bool explained = false;
        for (int s : grades) {
          if (explained) break;
          for (int t : grades) {
            if (t < s || s + t > n || grades.count(s + t)) continue;
            reason << "E" << s << "^E" << t << " lands in missing grade "
                   << (s + t);
            explained = true;
            break;
          }
        }
        for (int s : grades) {
          if (explained) break;
          if (s == 0) continue;
          if (s + 2 <= n && !grades.count(s + 2)) {
            reason << "grade " << s << " forces missing grade " << (s + 2);
            explained = true;
          } else if ((s & 1) && s + 1 <= n && !grades.count(s + 1)) {
            reason << "grade " << s << " forces missing grade " << (s + 1);
            explained = true;
          }
        }
        if (!explained) reason << "the unit is missing";
      } else {
        reason << "realization " << format_set(grades)
               << " is a stable subalgebra but the shift condition fails: ";
        for (int s : form.S) {
          if (s + form.i <= n && !form.S.count(s + form.i)) {
            reason << s << "+" << form.i << "=" << (s + form.i)
                   << " is not in S";
            break;
          }
        }
      }
      out.discrepancies.push_back({n, form, reason.str()});
    }
  }
  std::stable_sort(out.results.begin(), out.results.end(),
                   [](const auto& a, const auto& b) {
                     return a.second.compare(b.second) < 0;
                   });
  return out;
}

}  // namespace grasslab
