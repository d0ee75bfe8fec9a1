// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Every comparison is exact; runtime limits are enforced per
// criterion.
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "specnum/higher.hpp"
#include "specnum/io.hpp"

using namespace specnum;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, double time_limit_s,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    auto start = Clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    if (time_limit_s > 0 && elapsed > time_limit_s) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over time limit");
    }
    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << "  criterion " << number << ": " << label << "  ("
         << int(elapsed * 1000) << " ms)";
    if (!ok && !detail.empty())
        line << "  -- " << detail;
    std::cout << line.str() << "\n";
    if (!ok)
        ++failures;
}

PageClass class_of(const SpectralPage& pg, const std::string& expr) {
    return make_page_class(pg, parse_class_expression(*pg.tc, expr));
}

FilteredComplex extended_instance(std::uint64_t seed) {
    std::string ring = seed % 2 ? "s2xs4" : "s2xs4-sum";
    int extra = ring == "s2xs4" ? int(seed % 5) : int(seed % 3);
    return random_extended_complex(ring, extra, seed);
}

FilteredComplex symmetrize(const FilteredComplex& c) {
    FilteredComplex s = c;
    FilteredComplex d = dualize(c);
    s.generators.insert(s.generators.end(), d.generators.begin(), d.generators.end());
    s.entries.insert(s.entries.end(), d.entries.begin(), d.entries.end());
    return s;
}

bool converges(const FilteredComplex& c, std::string& detail) {
    TotalComplex tc = total_complex(c);
    SpectralPage lim = limit_page(c, tc);
    std::map<int, std::size_t> page_ranks;
    for (const auto& [pq, dim] : lim.dims())
        page_ranks[pq.first + pq.second] += dim;
    if (page_ranks != homology(tc).ranks()) {
        detail = "limit page does not match homology";
        return false;
    }
    return true;
}

}  // namespace

int main() {
    // 1. worked example, simple factor
    criterion(1, "worked example, simple factor: c_bar^2([a*p4]) = 2.1", 1.0,
              [](std::string& detail) {
                  FilteredComplex b = builtin_example("s2xs4", {}).complex;
                  if (!validate_complex(b).ok()) {
                      detail = "fixture does not validate";
                      return false;
                  }
                  TotalComplex tc = total_complex(b);
                  SpectralPage pg = page(b, tc, 2);
                  HigherInvariantValue v = higher(b, pg, class_of(pg, "a*p4"));
                  if (!v.absolute_valid || v.c_bar != 2.1) {
                      detail = "c_bar = " + std::to_string(v.c_bar);
                      return false;
                  }
                  return true;
              });

    // 2. worked example, connected sum
    criterion(2, "connected sum: c_bar^2 = 2.1, c_bar^3 = 2.05", 1.0, [](std::string& detail) {
        FilteredComplex c = builtin_example("s2xs4-sum", {}).complex;
        if (!validate_complex(c).ok()) {
            detail = "fixture does not validate";
            return false;
        }
        TotalComplex tc = total_complex(c);
        SpectralPage pg2 = page(c, tc, 2);
        SpectralPage pg3 = page(c, tc, 3);
        HigherInvariantValue v2 = higher(c, pg2, class_of(pg2, "a1*p4_1"));
        HigherInvariantValue v3 = higher(c, pg3, class_of(pg3, "a1*p4_1"));
        if (!v2.absolute_valid || v2.c_bar != 2.1 || !v3.absolute_valid || v3.c_bar != 2.05 ||
            !(v3.c_bar < v2.c_bar)) {
            detail = "c_bar^2 = " + std::to_string(v2.c_bar) +
                     ", c_bar^3 = " + std::to_string(v3.c_bar);
            return false;
        }
        return true;
    });

    std::vector<FilteredComplex> tested;  // instances shared with criterion 5

    // 3. oracle equivalence
    criterion(3, "sigma equals the exhaustive oracle on 200 random plain complexes", 30.0,
              [&](std::string& detail) {
                  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
                      FilteredComplex c = random_plain_complex(1 + int(seed % 10), 3, seed);
                      if (!validate_complex(c).ok()) {
                          detail = "seed " + std::to_string(seed) + " invalid";
                          return false;
                      }
                      TotalComplex tc = total_complex(c);
                      for (const auto& cls : homology(tc).classes)
                          if (spectral_number_relative(tc, cls.representative) !=
                              spectral_number_oracle(tc, cls.representative)) {
                              detail = "mismatch at seed " + std::to_string(seed);
                              return false;
                          }
                      tested.push_back(std::move(c));
                  }
                  return true;
              });

    // 4. page-turn consistency
    criterion(4, "turn_page matches direct pages on 100 random extended complexes", 60.0,
              [&](std::string& detail) {
                  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
                      FilteredComplex c = extended_instance(seed);
                      if (!validate_complex(c).ok()) {
                          detail = "seed " + std::to_string(seed) + " invalid";
                          return false;
                      }
                      TotalComplex tc = total_complex(c);
                      int r_max = stabilization_page(c);
                      SpectralPage pg = page_unchecked(c, tc, 1);
                      for (int r = 1; r < r_max; ++r) {
                          SpectralPage turned = turn_page(c, tc, pg);  // verifies internally
                          SpectralPage direct = page_unchecked(c, tc, r + 1);
                          if (turned.dims() != direct.dims()) {
                              detail = "dims mismatch at seed " + std::to_string(seed) +
                                       ", page " + std::to_string(r + 1);
                              return false;
                          }
                          pg = std::move(turned);
                      }
                      tested.push_back(std::move(c));
                  }
                  return true;
              });

    // 5. convergence on every instance above
    criterion(5, "limit pages equal homology on all criteria 3-4 instances", 0,
              [&](std::string& detail) {
                  if (tested.size() < 300) {
                      detail = "instances missing (earlier criteria failed)";
                      return false;
                  }
                  for (const auto& c : tested)
                      if (!converges(c, detail))
                          return false;
                  return true;
              });

    // 6. Eq-style identity at page 2 and the ordering for all r
    criterion(6, "sigma_tilde^2 = sigma_bar^2 = max sigma; sigma_tilde <= sigma_bar", 0,
              [](std::string& detail) {
                  // decomposable classes on unit-coefficient extended complexes
                  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
                      FilteredComplex plain = random_plain_complex(6, 2, seed);
                      FilteredComplex c{builtin_ring("s2xs4"), plain.generators, {}, true};
                      for (const auto& e : plain.entries)
                          c.entries.push_back({e.source, e.target, c.ring.unit()});
                      TotalComplex tc = total_complex(c);
                      SpectralPage pg = page(c, tc, 2);
                      FilteredComplex shadow = plain_shadow(c);
                      TotalComplex tcs = total_complex(shadow);
                      for (const auto& hcls : homology(tcs).classes) {
                          MixedTerm term{"a", {}};
                          Gf2Vector chain(tc.size());
                          for (std::size_t i : hcls.representative.support()) {
                              const auto& g = shadow.generators[tcs.basis[i].gen_index].name;
                              term.generators.push_back(g);
                              chain.flip(
                                  tc.index.at({c.ring.index_of("a"), c.generator_index(g)}));
                          }
                          PageClass alpha;
                          try {
                              alpha = make_page_class(pg, chain);
                          } catch (const std::invalid_argument&) {
                              continue;
                          }
                          if (alpha.is_zero())
                              continue;
                          double expected = mixed_page_sigma(c, {term});
                          if (sigma_bar(c, pg, alpha) != expected ||
                              sigma_tilde(c, pg, alpha) != expected) {
                              detail = "page-2 identity fails at seed " + std::to_string(seed);
                              return false;
                          }
                      }
                  }
                  // ordering on extended instances, all cells, all representable pages
                  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
                      FilteredComplex c = extended_instance(seed);
                      TotalComplex tc = total_complex(c);
                      int r_max = std::min(stabilization_page(c),
                                           c.ring.truncation_degree() + 2);
                      for (int r = 2; r <= r_max; ++r) {
                          SpectralPage pg = page(c, tc, r);
                          for (const auto& [pq, cell] : pg.cells)
                              for (std::size_t j = 0; j < cell.dim(); ++j) {
                                  PageClass alpha;
                                  alpha.p = pq.first;
                                  alpha.q = pq.second;
                                  alpha.coefficients = Gf2Vector::unit(cell.dim(), j);
                                  alpha.representative = cell.reps[j];
                                  if (sigma_tilde(c, pg, alpha) > sigma_bar(c, pg, alpha)) {
                                      detail = "ordering fails at seed " + std::to_string(seed);
                                      return false;
                                  }
                              }
                      }
                  }
                  return true;
              });

    // 7. first inequality of the gap theorem
    criterion(7, "c_tilde(source) >= c_tilde(target) on every gap entry", 0,
              [](std::string& detail) {
                  std::vector<FilteredComplex> cs = {builtin_example("s2xs4", {}).complex,
                                                     builtin_example("s2xs4-sum", {}).complex};
                  for (std::uint64_t seed = 1; seed <= 100; ++seed)
                      cs.push_back(extended_instance(seed));
                  for (std::size_t i = 0; i < cs.size(); ++i) {
                      GapReport gr = gap_report(cs[i], stabilization_page(cs[i]));
                      if (!gr.ok()) {
                          detail = "violation on instance " + std::to_string(i) + ": " +
                                   gr.violations.front();
                          return false;
                      }
                  }
                  return true;
              });

    // 8. stability under value perturbations and shifts
    criterion(8, "perturbation stability |dsigma| <= eps; c shift-invariant", 0,
              [](std::string& detail) {
                  const double eps = 0.01;
                  std::vector<FilteredComplex> bases = {builtin_example("s2xs4", {}).complex};
                  for (std::uint64_t seed = 1; seed <= 20; ++seed)
                      bases.push_back(random_plain_complex(8, 3, seed));
                  int runs = 0;
                  for (std::size_t bi = 0; bi < bases.size(); ++bi) {
                      const FilteredComplex& c = bases[bi];
                      TotalComplex tc = total_complex(c);
                      HomologyBasis h = homology(tc);
                      int reps = bi == 0 ? 100 : 5;  // 100 on the worked example
                      for (int k = 0; k < reps; ++k, ++runs) {
                          FilteredComplex p = perturb_values(c, eps, 1000 + k);
                          TotalComplex tp = total_complex(p);
                          for (const auto& cls : h.classes) {
                              // transport the representative by matching labels
                              Gf2Vector mapped(tp.size());
                              for (std::size_t i : cls.representative.support())
                                  mapped.flip(tp.index.at(
                                      {tc.basis[i].ring_index,
                                       p.generator_index(
                                           c.generators[tc.basis[i].gen_index].name)}));
                              double s0 = spectral_number_relative(tc, cls.representative);
                              double s1 = spectral_number_relative(tp, mapped);
                              if (std::abs(s1 - s0) > eps) {
                                  detail = "|dsigma| > eps on base " + std::to_string(bi);
                                  return false;
                              }
                          }
                      }
                      // uniform shift leaves every absolute invariant unchanged
                      FilteredComplex shifted = c;
                      for (auto& g : shifted.generators)
                          g.value += 1.25;
                      TotalComplex ts = total_complex(shifted);
                      for (const auto& cls : homology(tc).classes) {
                          Gf2Vector mapped(ts.size());
                          for (std::size_t i : cls.representative.support())
                              mapped.flip(ts.index.at(
                                  {tc.basis[i].ring_index,
                                   shifted.generator_index(
                                       c.generators[tc.basis[i].gen_index].name)}));
                          InvariantValue v0 = spectral_number(tc, cls.representative);
                          InvariantValue v1 = spectral_number(ts, mapped);
                          if (v0.absolute_valid != v1.absolute_valid ||
                              (v0.absolute_valid && v0.absolute != v1.absolute)) {
                              detail = "absolute invariant moved under a uniform shift";
                              return false;
                          }
                      }
                  }
                  return runs >= 120;
              });

    // 9. module-action suite on the product-of-spheres fixture
    criterion(9, "action fixture: Leibniz, units, delta-drop, cup-length bound", 0,
              [](std::string& detail) {
                  FilteredComplex m = plain_shadow(builtin_example("s2xs4", {}).complex);
                  ActionTable t;
                  for (const auto& g : m.generators) {
                      t.morse_product[{"p6", g.name}] = {g.name};
                      if (g.name != "p6")
                          t.morse_product[{g.name, "p6"}] = {g.name};
                      t.module_action[{"p6", g.name}] = {g.name};
                      if (g.name != "p6")
                          t.module_action[{g.name, "p6"}] = {g.name};
                  }
                  t.morse_product[{"p4", "p2"}] = {"p0"};
                  t.morse_product[{"p2", "p4"}] = {"p0"};
                  t.module_action[{"p4", "p2"}] = {"p0"};
                  t.module_action[{"p2", "p4"}] = {"p0"};

                  CheckReport va = validate_action(m, m, t);
                  if (!va.ok()) {
                      detail = "validate_action: " + va.failures.front();
                      return false;
                  }
                  const double delta = 0.2;
                  CheckReport pi = product_inequality(m, m, t, delta);
                  if (!pi.ok()) {
                      detail = "product_inequality: " + pi.failures.front();
                      return false;
                  }
                  // telescoped cup-length bound on the length-2 chain [p4].[p2] = [p0]
                  TotalComplex tm = total_complex(m);
                  double c_top =
                      spectral_number_relative(
                          tm, Gf2Vector::unit(tm.size(),
                                              tm.index.at({0, m.generator_index("p6")}))) -
                      sigma_of_unit(tm);
                  if (!(c_top >= 2 * delta)) {
                      detail = "cup-length bound fails: c([top]) = " + std::to_string(c_top);
                      return false;
                  }
                  return true;
              });

    // 10. duality
    criterion(10, "sigma multiset duality on 50 symmetric complexes, oracle-checked", 0,
              [](std::string& detail) {
                  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
                      FilteredComplex c = symmetrize(random_plain_complex(4, 3, seed));
                      CheckReport rep = check_duality(c);
                      if (!rep.ok() || !rep.notes.empty()) {
                          detail = "seed " + std::to_string(seed) + ": " +
                                   (rep.failures.empty() ? rep.notes.front()
                                                         : rep.failures.front());
                          return false;
                      }
                      // oracle verification on both sides
                      for (const FilteredComplex& side : {c, dualize(c)}) {
                          TotalComplex tc = total_complex(side);
                          HomologyBasis h = homology(tc);
                          std::size_t spectrum_size = 0;
                          for (const auto& [deg, vals] : sigma_spectrum(tc))
                              spectrum_size += vals.size();
                          if (spectrum_size != h.classes.size()) {
                              detail = "spectrum size mismatch at seed " + std::to_string(seed);
                              return false;
                          }
                          for (const auto& cls : h.classes)
                              if (spectral_number_relative(tc, cls.representative) !=
                                  spectral_number_oracle(tc, cls.representative)) {
                                  detail = "oracle mismatch at seed " + std::to_string(seed);
                                  return false;
                              }
                      }
                  }
                  return true;
              });

    // 11. growth family
    criterion(11, "circle-shift: c([top]) = 2k for k in {1, 5, 10}", 0, [](std::string& detail) {
        for (double k : {1.0, 5.0, 10.0}) {
            FilteredComplex c = builtin_example("circle-shift", {k, 0, 0, 0}).complex;
            TotalComplex tc = total_complex(c);
            Gf2Vector top = Gf2Vector::unit(tc.size(),
                                            tc.index.at({0, c.generator_index("top")}));
            InvariantValue v = spectral_number(tc, top);
            if (!v.absolute_valid || v.absolute != 2 * k) {
                detail = "k = " + std::to_string(k) + ": c = " + std::to_string(v.absolute);
                return false;
            }
        }
        return true;
    });

    std::cout << (failures == 0 ? "all criteria passed"
                                : std::to_string(failures) + " criterion(s) failed")
              << "\n";
    return failures == 0 ? 0 : 1;
}
