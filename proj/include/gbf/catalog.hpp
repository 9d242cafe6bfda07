#pragma once

#include "gbf/group.hpp"

#include <string>
#include <vector>

namespace gbf {

// Builds a group from a built-in name: "1"/"C1", "C<n>", "D<2n>" (dihedral of
// order 2n), "S<n>", "A<n>", "Q8", "V4", "Dic<n>" (dicyclic of order 4n), and
// products joined with "x" (e.g. "C2xC4"). Results are cached by name.
GroupPtr make_group(const std::string& name, const Caps& caps = {});

// Registers a user-supplied permutation group under its name; later
// make_group calls resolve it. Overrides built-ins of the same name.
GroupPtr register_group(const std::string& name, unsigned degree,
                        const std::vector<std::vector<unsigned>>& generators,
                        const Caps& caps = {});

// Bundled scan catalog: every name with order <= max_order, ordered by
// (order, name). Covers all isomorphism types through order 12 and a spread
// of orders 13..24.
std::vector<std::string> default_catalog(unsigned max_order);
std::vector<GroupPtr> catalog_groups(unsigned max_order, const Caps& caps = {});

// Readable label for the isomorphism type of a subgroup-sized group: a
// built-in name when one matches, else "G<order>_?".
std::string recognize_type(const GroupPtr& g);

// Label of the subgroup conjugacy class `cls` of g, e.g. "C2" or "C2.2" when
// several classes share a type.
std::string subgroup_class_label(const GroupPtr& g, uint32_t cls);
const std::vector<std::string>& subgroup_class_labels(const GroupPtr& g);

// Slice-class labels "(T-label,S-label)", disambiguated with ".k" suffixes.
const std::vector<std::string>& slice_class_labels(const GroupPtr& g);

}  // namespace gbf
