#pragma once

// Structural checks shared by the unit and acceptance suites. Each returns
// an empty string on success and a description of the first violation
// otherwise.

#include <random>
#include <string>

#include "loopforest/forest.hpp"
#include "loopforest/progression.hpp"
#include "oracle/oracle.hpp"

namespace loopforest::oracle {

/// At every event time t the active forest vertices correspond one-to-one
/// to the bounded complement components: equal interiors and chains equal
/// to theta of the component (projected for unsigned forests).
template <class C>
std::string check_active_chains(const Oracle& oracle, const FilteredComplex& k,
                                const BasicForest<C>& f);

/// Edges go from larger to strictly smaller time, children have smaller
/// ids, and kinds match the number of children.
template <class C>
std::string check_forest_shape(const BasicForest<C>& f);

/// Along every directed path from u to w, every facet of u's chain is a
/// face of a top simplex in the interior of w.
template <class C>
std::string check_support_nesting(const Oracle& oracle, const BasicForest<C>& f);

/// The five conditions of a cycle progression barcode: supports lie in
/// K_r, chains vanish outside the bar, the nonzero chains at r form a
/// basis of H_d(K_r), supports nest along a progression, and the class of
/// gamma(r) has coefficient 1 at gamma(s) for r <= s.
template <class C>
std::string check_progression_conditions(const Oracle& oracle, const FilteredComplex& k,
                                         const BasicBarcode<C>& barcode);

/// gamma(r) = p_{K_r}(signed boundary of its interior) for every step.
std::string check_signed_minimality(const Oracle& oracle, const ProgressionBarcode& barcode);

/// z - R(z) is a boundary in K_t and R(z) is a cycle of K_t, for `count`
/// random cycles z at random event times t.
std::string check_strip(const Oracle& oracle, const FilteredComplex& k, int count,
                        std::mt19937_64& rng);

/// Bars of the barcode sorted by (birth, death).
template <class C>
std::vector<Bar> sorted_bars(const BasicBarcode<C>& barcode);

}  // namespace loopforest::oracle
