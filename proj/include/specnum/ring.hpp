#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "specnum/gf2.hpp"

namespace specnum {

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
    void add(std::string msg) { violations.push_back(std::move(msg)); }
    std::string to_string() const;
};

struct RingBasisElement {
    std::string name;
    int degree = 0;
};

// Homogeneous GF(2) combination of ring basis elements. Zero has degree -1.
struct RingElement {
    int degree = -1;
    Gf2Vector coeffs;  // over the full ring basis

    bool is_zero() const { return degree < 0 || coeffs.is_zero(); }
};

// Finite truncation (by chain degree) of a graded differential ring over GF(2),
// given by multiplication and differential tables. Products whose degree
// exceeds the truncation are zero by convention.
class RingModel {
  public:
    RingModel(std::vector<RingBasisElement> basis, int truncation_degree);

    std::size_t size() const { return basis_.size(); }
    const std::vector<RingBasisElement>& basis() const { return basis_; }
    int truncation_degree() const { return truncation_degree_; }
    std::size_t unit_index() const { return unit_index_; }
    bool is_trivial() const { return basis_.size() == 1; }

    std::size_t index_of(const std::string& name) const;  // throws on unknown name
    bool has_element(const std::string& name) const;

    void set_product(const std::string& left, const std::string& right,
                     const std::vector<std::string>& result);
    void set_diff(const std::string& element, const std::vector<std::string>& result);

    // Table lookups on basis elements (unit law applied implicitly).
    RingElement product_table(std::size_t i, std::size_t j) const;
    RingElement diff_table(std::size_t i) const;

    RingElement element(const std::vector<std::string>& names) const;
    RingElement zero() const { return RingElement{-1, Gf2Vector(basis_.size())}; }
    RingElement unit() const;

    RingElement multiply(const RingElement& a, const RingElement& b) const;
    RingElement add(const RingElement& a, const RingElement& b) const;
    RingElement diff(const RingElement& a) const;

    ValidationReport validate() const;

    std::string element_to_string(const RingElement& e) const;

    // Raw tables, for serialization.
    const std::map<std::pair<std::size_t, std::size_t>, Gf2Vector>& mult_entries() const {
        return mult_;
    }
    const std::map<std::size_t, Gf2Vector>& diff_entries() const { return diff_; }

  private:
    RingElement from_coeffs(Gf2Vector coeffs) const;

    std::vector<RingBasisElement> basis_;
    int truncation_degree_;
    std::size_t unit_index_;
    std::map<std::string, std::size_t> index_;
    std::map<std::pair<std::size_t, std::size_t>, Gf2Vector> mult_;  // omitted = zero
    std::map<std::size_t, Gf2Vector> diff_;                          // omitted = zero
};

// name in {"trivial", "s2xs4", "s2xs4-sum"}; throws std::invalid_argument otherwise.
RingModel builtin_ring(const std::string& name);

}  // namespace specnum
