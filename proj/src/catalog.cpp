#include "gbf/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <unordered_map>

namespace gbf {

namespace {

std::mutex reg_mutex;
std::map<std::string, GroupPtr> registry;

bool parse_uint(std::string_view s, unsigned& out) {
    if (s.empty()) return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size();
}

std::vector<std::vector<unsigned>> cyclic_gens(unsigned n) {
    std::vector<unsigned> c(n);
    for (unsigned i = 0; i < n; ++i) c[i] = (i + 1) % n;
    return {c};
}

GroupPtr build_atom(const std::string& name, const Caps& caps) {
    if (name == "1" || name == "C1" || name == "S1" || name == "A1" || name == "A2")
        return Group::from_permutations("1", 1, {}, caps);
    if (name == "V4") {
        return Group::from_permutations("V4", 4, {{1, 0, 2, 3}, {0, 1, 3, 2}}, caps);
    }

    unsigned n = 0;
    if (name.size() >= 2 && name[0] == 'C' && parse_uint(std::string_view(name).substr(1), n) && n >= 1)
        return Group::from_permutations(name, n, cyclic_gens(n), caps);

    if (name.size() >= 2 && name[0] == 'S' && parse_uint(std::string_view(name).substr(1), n) && n >= 2) {
        std::vector<unsigned> t(n), c(n);
        for (unsigned i = 0; i < n; ++i) {
            t[i] = i;
            c[i] = (i + 1) % n;
        }
        std::swap(t[0], t[1]);
        return Group::from_permutations(name, n, {t, c}, caps);
    }

    if (name.size() >= 2 && name[0] == 'A' && parse_uint(std::string_view(name).substr(1), n) && n >= 3) {
        std::vector<unsigned> three(n), cyc(n);
        for (unsigned i = 0; i < n; ++i) {
            three[i] = i;
            cyc[i] = i;
        }
        three[0] = 1;
        three[1] = 2;
        three[2] = 0;
        if (n % 2 == 1) {
            for (unsigned i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
        } else {
            for (unsigned i = 1; i < n; ++i) cyc[i] = (i % (n - 1)) + 1;
        }
        return Group::from_permutations(name, n, {three, cyc}, caps);
    }

    if (name.size() >= 2 && name[0] == 'D' && parse_uint(std::string_view(name).substr(1), n) && n >= 2 &&
        n % 2 == 0) {
        unsigned m = n / 2;  // rotation order
        if (m == 1) return build_atom("C2", caps);
        if (m == 2) return build_atom("V4", caps);
        std::vector<unsigned> rot(m), refl(m);
        for (unsigned i = 0; i < m; ++i) {
            rot[i] = (i + 1) % m;
            refl[i] = (m - i) % m;
        }
        return Group::from_permutations(name, m, {rot, refl}, caps);
    }

    if (name == "Q8") return build_atom("Dic2", caps);

    if (name.size() >= 4 && name.rfind("Dic", 0) == 0 &&
        parse_uint(std::string_view(name).substr(3), n) && n >= 1) {
        // Dicyclic of order 4n: a^{2n}=1, b^2=a^n, b a b^-1 = a^-1. Elements
        // a^i b^j indexed i + 2n*j; generators act by left translation.
        unsigned two_n = 2 * n, deg = 4 * n;
        std::vector<unsigned> pa(deg), pb(deg);
        for (unsigned i = 0; i < two_n; ++i) {
            pa[i] = (i + 1) % two_n;                  // a * a^i       = a^{i+1}
            pa[two_n + i] = two_n + (i + 1) % two_n;  // a * (a^i b)   = a^{i+1} b
            pb[i] = two_n + (two_n - i) % two_n;      // b * a^i       = a^{-i} b
            pb[two_n + i] = (n + two_n - i) % two_n;  // b * (a^i b)   = a^{n-i}
        }
        return Group::from_permutations(name, deg, {pa, pb}, caps);
    }

    throw validation_error("unknown group name: " + name);
}

GroupPtr build_name(const std::string& name, const Caps& caps) {
    // Left-fold over "x"-separated factors.
    size_t pos = name.find('x');
    if (pos == std::string::npos) return build_atom(name, caps);
    GroupPtr acc = build_atom(name.substr(0, pos), caps);
    while (pos != std::string::npos) {
        size_t next = name.find('x', pos + 1);
        std::string part = next == std::string::npos ? name.substr(pos + 1)
                                                     : name.substr(pos + 1, next - pos - 1);
        acc = direct_product(acc, build_atom(part, caps), caps).group;
        pos = next;
    }
    return acc;
}

struct CatalogRow {
    unsigned order;
    const char* name;
};

// The bundled catalog. Complete up to isomorphism through order 12; beyond
// that, cyclic groups through 16 plus the families the scans care about.
const CatalogRow kCatalog[] = {
    {1, "1"},
    {2, "C2"},
    {3, "C3"},
    {4, "C4"},
    {4, "V4"},
    {5, "C5"},
    {6, "C6"},
    {6, "S3"},
    {7, "C7"},
    {8, "C8"},
    {8, "C2xC4"},
    {8, "C2xC2xC2"},
    {8, "D8"},
    {8, "Q8"},
    {9, "C9"},
    {9, "C3xC3"},
    {10, "C10"},
    {10, "D10"},
    {11, "C11"},
    {12, "C12"},
    {12, "C2xC6"},
    {12, "D12"},
    {12, "A4"},
    {12, "Dic3"},
    {13, "C13"},
    {14, "C14"},
    {14, "D14"},
    {15, "C15"},
    {16, "C16"},
    {16, "C2xC8"},
    {16, "C4xC4"},
    {16, "C2xC2xC4"},
    {16, "C2xC2xC2xC2"},
    {16, "D16"},
    {16, "Dic4"},
    {16, "C2xD8"},
    {16, "C2xQ8"},
    {18, "C18"},
    {18, "C3xC6"},
    {18, "D18"},
    {18, "C3xS3"},
    {20, "C20"},
    {20, "C2xC10"},
    {20, "D20"},
    {20, "Dic5"},
    {21, "C21"},
    {22, "C22"},
    {22, "D22"},
    {24, "C24"},
    {24, "C2xC12"},
    {24, "C2xC2xC6"},
    {24, "S4"},
    {24, "A4xC2"},
    {24, "D24"},
    {24, "Dic6"},
    {24, "C3xD8"},
    {24, "C3xQ8"},
    {24, "C4xS3"},
    {24, "C2xD12"},
    {24, "C2xC2xS3"},
};

}  // namespace

GroupPtr make_group(const std::string& name, const Caps& caps) {
    std::scoped_lock lock(reg_mutex);
    auto it = registry.find(name);
    if (it != registry.end()) return it->second;
    GroupPtr g = build_name(name, caps);
    registry.emplace(name, g);
    return g;
}

GroupPtr register_group(const std::string& name, unsigned degree,
                        const std::vector<std::vector<unsigned>>& generators, const Caps& caps) {
    GroupPtr g = Group::from_permutations(name, degree, generators, caps);
    std::scoped_lock lock(reg_mutex);
    registry[name] = g;
    return g;
}

std::vector<std::string> default_catalog(unsigned max_order) {
    std::vector<std::string> out;
    for (const auto& row : kCatalog)
        if (row.order <= max_order) out.push_back(row.name);
    return out;
}

std::vector<GroupPtr> catalog_groups(unsigned max_order, const Caps& caps) {
    std::vector<GroupPtr> out;
    for (const auto& name : default_catalog(max_order)) out.push_back(make_group(name, caps));
    return out;
}

std::string recognize_type(const GroupPtr& g) {
    static const std::map<unsigned, std::vector<std::string>> candidates = [] {
        std::map<unsigned, std::vector<std::string>> m;
        for (const auto& row : kCatalog) m[row.order].push_back(row.name);
        return m;
    }();
    unsigned n = g->order();
    if (n == 1) return "1";
    auto it = candidates.find(n);
    if (it != candidates.end())
        for (const auto& name : it->second)
            if (are_isomorphic(g, make_group(name))) return name;
    return "G" + std::to_string(n) + "_?";
}

namespace {

std::mutex label_mutex;
std::unordered_map<const Group*, std::vector<std::string>> sub_labels;
std::unordered_map<const Group*, std::vector<std::string>> sl_labels;

std::vector<std::string> disambiguate(std::vector<std::string> raw) {
    std::map<std::string, unsigned> total, seen;
    for (const auto& s : raw) ++total[s];
    for (auto& s : raw) {
        unsigned k = ++seen[s];
        if (total[s] > 1) s += "." + std::to_string(k);
    }
    return raw;
}

}  // namespace

const std::vector<std::string>& subgroup_class_labels(const GroupPtr& g) {
    {
        std::scoped_lock lock(label_mutex);
        auto it = sub_labels.find(g.get());
        if (it != sub_labels.end()) return it->second;
    }
    const auto& d = g->subgroups();
    std::vector<std::string> raw;
    for (uint32_t c = 0; c < d.n_classes(); ++c) {
        uint32_t rep = d.class_rep[c];
        if (d.size[rep] == 1)
            raw.push_back("1");
        else if (rep == d.full_index)
            raw.push_back(g->name());
        else
            raw.push_back(recognize_type(g->subgroup_group(rep).group));
    }
    auto labels = disambiguate(std::move(raw));
    std::scoped_lock lock(label_mutex);
    return sub_labels.emplace(g.get(), std::move(labels)).first->second;
}

std::string subgroup_class_label(const GroupPtr& g, uint32_t cls) {
    return subgroup_class_labels(g).at(cls);
}

const std::vector<std::string>& slice_class_labels(const GroupPtr& g) {
    {
        std::scoped_lock lock(label_mutex);
        auto it = sl_labels.find(g.get());
        if (it != sl_labels.end()) return it->second;
    }
    const auto& d = g->subgroups();
    const auto& sd = g->slices();
    const auto& subs = subgroup_class_labels(g);
    std::vector<std::string> raw;
    for (const auto& cls : sd.classes)
        raw.push_back("(" + subs[d.class_of[cls.big]] + "," + subs[d.class_of[cls.small]] + ")");
    auto labels = disambiguate(std::move(raw));
    std::scoped_lock lock(label_mutex);
    return sl_labels.emplace(g.get(), std::move(labels)).first->second;
}

}  // namespace gbf
