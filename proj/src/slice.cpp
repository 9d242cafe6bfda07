#include "gbf/slice.hpp"

#include "gbf/catalog.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <unordered_map>

namespace gbf::slice {

namespace {

void check_same_group(const Elt& a, const Elt& b) {
    if (a.group.get() != b.group.get())
        throw validation_error("slice: elements live over different groups");
}

using SparseRow = std::vector<std::pair<uint32_t, int32_t>>;

// <T,S>.<V,U> = sum over g in [S\G/U] of <T n gVg^-1, S n gUg^-1>.
const SparseRow& pair_product(const GroupPtr& g, uint32_t ac, uint32_t bc) {
    static std::mutex mtx;
    static std::unordered_map<const Group*,
                              std::unordered_map<uint64_t, SparseRow>> cache;
    uint64_t key = (static_cast<uint64_t>(std::min(ac, bc)) << 32) | std::max(ac, bc);
    {
        std::scoped_lock lock(mtx);
        auto& per = cache[g.get()];
        auto it = per.find(key);
        if (it != per.end()) return it->second;
    }

    const auto& d = g->subgroups();
    const auto& sd = g->slices();
    uint32_t t = sd.classes[std::min(ac, bc)].big, s = sd.classes[std::min(ac, bc)].small;
    uint32_t v = sd.classes[std::max(ac, bc)].big, u = sd.classes[std::max(ac, bc)].small;
    unsigned n = g->order();
    std::vector<int32_t> acc(sd.classes.size(), 0);
    std::vector<char> visited(n, 0);
    for (uint16_t x = 0; x < n; ++x) {
        if (visited[x]) continue;
        for (uint16_t a : d.elems[s])
            for (uint16_t b : d.elems[u]) visited[g->mul(g->mul(a, x), b)] = 1;
        Mask big = d.mask[t] & d.mask[g->conj_subgroup(v, x)];
        Mask small = d.mask[s] & d.mask[g->conj_subgroup(u, x)];
        acc[sd.class_of(d.index_of.at(big), d.index_of.at(small))] += 1;
    }
    SparseRow row;
    for (uint32_t c = 0; c < sd.classes.size(); ++c)
        if (acc[c]) row.push_back({c, acc[c]});

    std::scoped_lock lock(mtx);
    return cache[g.get()].emplace(key, std::move(row)).first->second;
}

}  // namespace

bool Elt::is_zero() const {
    return std::ranges::all_of(coeffs, [](const Rat& c) { return c == 0; });
}

const std::vector<std::string>& basis(const GroupPtr& g) { return slice_class_labels(g); }

Elt zero(const GroupPtr& g) {
    return Elt{g, std::vector<Rat>(g->slices().classes.size())};
}

Elt basis_elt(const GroupPtr& g, uint32_t cls) {
    Elt e = zero(g);
    e.coeffs.at(cls) = 1;
    return e;
}

Elt unit(const GroupPtr& g) {
    const auto& d = g->subgroups();
    return basis_elt(g, g->slices().class_of(d.full_index, d.full_index));
}

Elt add(Elt a, const Elt& b) {
    check_same_group(a, b);
    for (size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] += b.coeffs[i];
    return a;
}

Elt sub(Elt a, const Elt& b) {
    check_same_group(a, b);
    for (size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] -= b.coeffs[i];
    return a;
}

Elt scale(Elt a, const Rat& c) {
    for (auto& x : a.coeffs) x *= c;
    return a;
}

Elt mult(const Elt& a, const Elt& b) {
    check_same_group(a, b);
    Elt out = zero(a.group);
    for (uint32_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] == 0) continue;
        for (uint32_t j = 0; j < b.coeffs.size(); ++j) {
            if (b.coeffs[j] == 0) continue;
            Rat c = a.coeffs[i] * b.coeffs[j];
            for (const auto& [cls, count] : pair_product(a.group, i, j))
                out.coeffs[cls] += c * count;
        }
    }
    return out;
}

std::vector<Rat> marks(const Elt& a) {
    const auto& sd = a.group->slices();
    unsigned nc = static_cast<unsigned>(sd.classes.size());
    std::vector<Rat> v(nc);
    for (uint32_t k = 0; k < nc; ++k) {
        if (a.coeffs[k] == 0) continue;
        for (uint32_t h = 0; h < nc; ++h) {
            int32_t m = sd.marks[static_cast<size_t>(h) * nc + k];
            if (m) v[h] += a.coeffs[k] * m;
        }
    }
    return v;
}

Elt from_marks(const GroupPtr& g, const std::vector<Rat>& v) {
    const auto& sd = g->slices();
    unsigned nc = static_cast<unsigned>(sd.classes.size());
    if (v.size() != nc) throw validation_error("slice mark vector has wrong length");
    // Block-triangular under the (|T|, |S|, lex) class order: a nonzero mark
    // at (V,U) of <T,S> needs |U| <= |S| and |V| <= |T|, with equality forcing
    // the same class.
    Elt out = zero(g);
    for (uint32_t h = nc; h-- > 0;) {
        Rat acc = v[h];
        for (uint32_t k = h + 1; k < nc; ++k) {
            int32_t m = sd.marks[static_cast<size_t>(h) * nc + k];
            if (m) acc -= out.coeffs[k] * m;
        }
        out.coeffs[h] = acc / sd.marks[static_cast<size_t>(h) * nc + h];
    }
    return out;
}

Elt xi_idempotent(const GroupPtr& g, uint32_t cls) {
    const auto& d = g->subgroups();
    const auto& sd = g->slices();
    uint32_t t = sd.classes.at(cls).big, s = sd.classes.at(cls).small;
    Elt out = zero(g);
    const auto& below_s = d.below[s];
    const auto& mu_s = d.moebius[s];
    const auto& below_t = d.below[t];
    const auto& mu_t = d.moebius[t];
    for (size_t vp = 0; vp < below_t.size(); ++vp) {
        uint32_t v = below_t[vp];
        if (mu_t[vp] == 0 || !d.contains(s, v)) continue;  // need S <= V <= T
        for (size_t up = 0; up < below_s.size(); ++up) {
            uint32_t u = below_s[up];
            if (mu_s[up] == 0) continue;
            out.coeffs[sd.class_of(v, u)] +=
                Rat(static_cast<int64_t>(d.size[u]) * mu_s[up] * mu_t[vp]);
        }
    }
    return scale(std::move(out), Rat(1, sd.classes[cls].stabilizer));
}

Rat m_slice(const GroupPtr& g, const Subgroup& s, const Subgroup& n) {
    uint32_t si = g->subgroup_index(s);
    uint32_t ni = g->subgroup_index(n);
    const auto& d = g->subgroups();
    if (d.normalizer[ni] != d.full_index)
        throw validation_error("m_slice: N is not normal in " + g->name());

    // SN is a subgroup since N is normal.
    Mask sn_mask(g->order());
    for (uint16_t a : d.elems[si])
        for (uint16_t b : d.elems[ni]) sn_mask.set(g->mul(a, b));
    uint32_t sni = d.index_of.at(sn_mask);

    uint32_t full = d.full_index;
    const auto& below_s = d.below[si];
    const auto& mu_s = d.moebius[si];
    const auto& below_g = d.below[full];
    const auto& mu_g = d.moebius[full];

    // The double sum over U <= S (UN = SN) and S <= V <= G (VN = G) factors.
    Int usum = 0;
    for (size_t up = 0; up < below_s.size(); ++up) {
        uint32_t u = below_s[up];
        if (mu_s[up] == 0) continue;
        unsigned inter = (d.mask[u] & d.mask[ni]).count();
        if (static_cast<size_t>(d.size[u]) * d.size[ni] != static_cast<size_t>(d.size[sni]) * inter)
            continue;
        usum += static_cast<int64_t>(d.size[u]) * mu_s[up];
    }
    Int vsum = 0;
    for (size_t vp = 0; vp < below_g.size(); ++vp) {
        uint32_t v = below_g[vp];
        if (mu_g[vp] == 0 || !d.contains(si, v)) continue;
        unsigned inter = (d.mask[v] & d.mask[ni]).count();
        if (static_cast<size_t>(d.size[v]) * d.size[ni] != static_cast<size_t>(g->order()) * inter)
            continue;
        vsum += mu_g[vp];
    }

    unsigned index_nsn = d.size[d.normalizer[sni]] / d.size[sni];
    return Rat(Int(index_nsn) * usum * vsum, Int(d.size[d.normalizer[si]]));
}

bool is_T_slice(const GroupPtr& g, const Subgroup& s) {
    const auto& d = g->subgroups();
    g->subgroup_index(s);
    for (uint32_t ni : d.normals) {
        if (ni == d.trivial_index) continue;
        if (m_slice(g, s, g->subgroup(ni)) != 0) return false;
    }
    return true;
}

std::vector<uint32_t> t_slices(const GroupPtr& g) {
    const auto& d = g->subgroups();
    const auto& sd = g->slices();
    std::vector<uint32_t> out;
    for (uint32_t c = 0; c < sd.classes.size(); ++c) {
        if (sd.classes[c].big != d.full_index) continue;
        if (is_T_slice(g, g->subgroup(sd.classes[c].small))) out.push_back(c);
    }
    return out;
}

Elt res(const Elt& a, const Subgroup& h) {
    const GroupPtr& g = a.group;
    uint32_t hi = g->subgroup_index(h);
    const auto& d = g->subgroups();
    const auto& sd = g->slices();
    const auto& hg = g->subgroup_group(hi);
    const auto& hd = hg.group->subgroups();
    const auto& hsd = hg.group->slices();
    std::vector<uint16_t> pos(g->order(), UINT16_MAX);
    for (uint16_t i = 0; i < hg.group->order(); ++i) pos[hg.hom.image_of[i]] = i;
    auto to_h = [&](const Mask& m) {
        Mask out(hg.group->order());
        for (uint16_t e : m.elements()) out.set(pos[e]);
        return hd.index_of.at(out);
    };

    Elt out = zero(hg.group);
    unsigned n = g->order();
    for (uint32_t c = 0; c < a.coeffs.size(); ++c) {
        if (a.coeffs[c] == 0) continue;
        uint32_t t = sd.classes[c].big, s = sd.classes[c].small;
        std::vector<char> visited(n, 0);
        for (uint16_t x = 0; x < n; ++x) {
            if (visited[x]) continue;
            for (uint16_t u : d.elems[hi])
                for (uint16_t v : d.elems[s]) visited[g->mul(g->mul(u, x), v)] = 1;
            uint32_t big = to_h(d.mask[hi] & d.mask[g->conj_subgroup(t, x)]);
            uint32_t small = to_h(d.mask[hi] & d.mask[g->conj_subgroup(s, x)]);
            out.coeffs[hsd.class_of(big, small)] += a.coeffs[c];
        }
    }
    return out;
}

Elt ind(const GroupPtr& g, const Subgroup& h, const Elt& a_at_h) {
    uint32_t hi = g->subgroup_index(h);
    const auto& hg = g->subgroup_group(hi);
    if (a_at_h.group.get() != hg.group.get())
        throw validation_error("ind: element does not live over the subgroup group");
    const auto& hd = hg.group->subgroups();
    const auto& hsd = hg.group->slices();
    const auto& d = g->subgroups();
    const auto& sd = g->slices();
    auto to_g = [&](uint32_t sub) {
        std::vector<uint16_t> mapped;
        for (uint16_t e : hd.elems[sub]) mapped.push_back(hg.hom.image_of[e]);
        std::sort(mapped.begin(), mapped.end());
        return d.index_of.at(g->mask_of(mapped));
    };
    Elt out = zero(g);
    for (uint32_t c = 0; c < a_at_h.coeffs.size(); ++c) {
        if (a_at_h.coeffs[c] == 0) continue;
        out.coeffs[sd.class_of(to_g(hsd.classes[c].big), to_g(hsd.classes[c].small))] +=
            a_at_h.coeffs[c];
    }
    return out;
}

Elt inf(const GroupPtr& g, const Subgroup& n, const Elt& a_at_quotient) {
    uint32_t ni = g->subgroup_index(n);
    const auto& qg = g->quotient_group(ni);
    if (a_at_quotient.group.get() != qg.group.get())
        throw validation_error("inf: element does not live over the quotient group");
    const auto& qd = qg.group->subgroups();
    const auto& qsd = qg.group->slices();
    const auto& d = g->subgroups();
    const auto& sd = g->slices();
    auto preimage = [&](uint32_t sub) {
        const Mask& ymask = qd.mask[sub];
        Mask pre(g->order());
        for (uint16_t x = 0; x < g->order(); ++x)
            if (ymask.test(qg.hom.image_of[x])) pre.set(x);
        return d.index_of.at(pre);
    };
    Elt out = zero(g);
    for (uint32_t c = 0; c < a_at_quotient.coeffs.size(); ++c) {
        if (a_at_quotient.coeffs[c] == 0) continue;
        out.coeffs[sd.class_of(preimage(qsd.classes[c].big), preimage(qsd.classes[c].small))] +=
            a_at_quotient.coeffs[c];
    }
    return out;
}

Elt def(const GroupPtr& g, const Subgroup& n, const Elt& a) {
    if (a.group.get() != g.get()) throw validation_error("def: element group mismatch");
    uint32_t ni = g->subgroup_index(n);
    const auto& qg = g->quotient_group(ni);
    const auto& qd = qg.group->subgroups();
    const auto& qsd = qg.group->slices();
    const auto& d = g->subgroups();
    const auto& sd = g->slices();
    auto image = [&](uint32_t sub) {
        Mask img(qg.group->order());
        for (uint16_t e : d.elems[sub]) img.set(qg.hom.image_of[e]);
        return qd.index_of.at(img);
    };
    Elt out = zero(qg.group);
    for (uint32_t c = 0; c < a.coeffs.size(); ++c) {
        if (a.coeffs[c] == 0) continue;
        out.coeffs[qsd.class_of(image(sd.classes[c].big), image(sd.classes[c].small))] +=
            a.coeffs[c];
    }
    return out;
}

Elt iso(const GroupHom& phi, const Elt& a) {
    if (a.group.get() != phi.source.get()) throw validation_error("iso: element group mismatch");
    if (!phi.is_bijective()) throw validation_error("iso: hom is not bijective");
    const auto& d = phi.source->subgroups();
    const auto& sd = phi.source->slices();
    const auto& td = phi.target->subgroups();
    const auto& tsd = phi.target->slices();
    auto image = [&](uint32_t sub) {
        Mask img(phi.target->order());
        for (uint16_t e : d.elems[sub]) img.set(phi.image_of[e]);
        return td.index_of.at(img);
    };
    Elt out = zero(phi.target);
    for (uint32_t c = 0; c < a.coeffs.size(); ++c) {
        if (a.coeffs[c] == 0) continue;
        out.coeffs[tsd.class_of(image(sd.classes[c].big), image(sd.classes[c].small))] +=
            a.coeffs[c];
    }
    return out;
}

Elt external(const Elt& a, const Elt& b) {
    const auto& prod = direct_product(a.group, b.group);
    const auto& d1 = a.group->subgroups();
    const auto& d2 = b.group->subgroups();
    const auto& dp = prod.group->subgroups();
    const auto& sd1 = a.group->slices();
    const auto& sd2 = b.group->slices();
    const auto& sdp = prod.group->slices();
    unsigned nb = b.group->order();
    auto pair_sub = [&](uint32_t x, uint32_t y) {
        Mask m(prod.group->order());
        for (uint16_t e1 : d1.elems[x])
            for (uint16_t e2 : d2.elems[y]) m.set(e1 * nb + e2);
        return dp.index_of.at(m);
    };
    Elt out = zero(prod.group);
    for (uint32_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] == 0) continue;
        for (uint32_t j = 0; j < b.coeffs.size(); ++j) {
            if (b.coeffs[j] == 0) continue;
            uint32_t big = pair_sub(sd1.classes[i].big, sd2.classes[j].big);
            uint32_t small = pair_sub(sd1.classes[i].small, sd2.classes[j].small);
            out.coeffs[sdp.class_of(big, small)] += a.coeffs[i] * b.coeffs[j];
        }
    }
    return out;
}

std::string render(const Elt& a) {
    const auto& labels = basis(a.group);
    std::string out;
    for (uint32_t c = a.coeffs.size(); c-- > 0;) {
        const Rat& x = a.coeffs[c];
        if (x == 0) continue;
        Rat mag = x < 0 ? Rat(-x) : x;
        if (out.empty())
            out += x < 0 ? "-" : "";
        else
            out += x < 0 ? " - " : " + ";
        if (mag != 1)
            out += (denominator(mag) == 1 ? numerator(mag).str() : rat_str(mag)) + " ";
        std::string lab = labels[c];
        if (lab.front() == '(' && lab.back() == ')') lab = lab.substr(1, lab.size() - 2);
        out += "<" + lab + ">";
    }
    return out.empty() ? "0" : out;
}

}  // namespace gbf::slice
