#pragma once
#include "fdscheme/shiftpoly.hpp"

namespace fds {

// Free-module vector over the shift-polynomial ring, fixed rank.
class ModVec {
  public:
    ModVec(RingPtr ring, int rank);
    explicit ModVec(std::vector<SPoly> comps);

    int rank() const { return (int)comps_.size(); }
    const RingPtr& ring() const { return ring_; }
    const SPoly& operator[](int i) const { return comps_[i]; }
    SPoly& operator[](int i) { return comps_[i]; }
    bool is_zero() const;

    ModVec operator+(const ModVec& o) const;
    ModVec operator-(const ModVec& o) const;
    ModVec operator-() const;
    ModVec mul_monomial(const ExpVec& e, const RatFunc& c) const;
    ModVec mul_coeff(const RatFunc& c) const;
    bool operator==(const ModVec& o) const;

    std::string to_string() const;

  private:
    RingPtr ring_;
    std::vector<SPoly> comps_;
};

// Module monomial order. Components carry pairwise distinct priorities;
// a higher priority value outranks a lower one. pot compares the component
// first (position over term), otherwise the monomial is compared first.
struct ModuleOrder {
    std::vector<int> priority;
    bool pot = true;

    int compare(int ca, const ExpVec& ea, int cb, const ExpVec& eb,
                const MonomialOrdering& mono) const;
};

// standard order: component 0 outranks 1 outranks 2 ...
ModuleOrder standard_order(int rank, bool pot = true);
// elimination order: components not in `keep` outrank all kept ones;
// inside each class lower index still outranks higher
ModuleOrder elimination_order(int rank, const std::vector<int>& keep);

struct Lead {
    int comp;
    ExpVec exp;
    RatFunc coeff;
};

Lead leading(const ModVec& v, const ModuleOrder& ord); // throws ZeroPolynomial

// scalar content removed; the module-leading coefficient gets a positive
// leading numerator. content_out receives the factor: v == primitive * content.
ModVec primitive(const ModVec& v, const ModuleOrder& ord, RatFunc* content_out = nullptr);

// Full-tail normal form: no term of the result is divisible by any basis lead.
ModVec normal_form(ModVec v, const std::vector<ModVec>& basis, const ModuleOrder& ord);

// Buchberger completion, normal pair selection, chain criterion.
std::vector<ModVec> buchberger(const std::vector<ModVec>& gens, const ModuleOrder& ord);

// Unique reduced basis: minimal, fully interreduced, monic, sorted descending
// by leading term.
std::vector<ModVec> reduce_basis(std::vector<ModVec> gb, const ModuleOrder& ord);

// Direct S-pair check (no criteria); intended for tests.
bool is_groebner(const std::vector<ModVec>& basis, const ModuleOrder& ord);

// Ideal (rank-1) convenience wrappers.
std::vector<SPoly> groebner_ideal(const std::vector<SPoly>& gens);
std::vector<SPoly> reduced_groebner_ideal(const std::vector<SPoly>& gens);
SPoly normal_form_ideal(const SPoly& p, const std::vector<SPoly>& basis);

// Generators of the submodule of rows whose components outside `keep`
// vanish. Reduced basis vectors restricted to that property.
std::vector<ModVec> eliminate_components(const std::vector<ModVec>& rows,
                                         const std::vector<int>& keep);

// Generators of the elimination ideal: members free of every variable
// flagged in `drop`. Computed under a block order, returned in the ring
// of the inputs.
std::vector<SPoly> eliminate_variables(const std::vector<SPoly>& gens,
                                       const std::vector<bool>& drop);

} // namespace fds
