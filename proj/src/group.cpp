#include "gbf/group.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <numeric>

namespace gbf {

namespace {

// Closes `els` under products. Elements before `already_closed` are assumed to
// form a subgroup, so pairs inside that prefix are skipped.
void close_under_products(const Group& g, std::vector<uint16_t>& els, Mask& m,
                          size_t already_closed) {
    for (size_t i = already_closed; i < els.size(); ++i) {
        for (size_t j = 0; j <= i; ++j) {
            uint16_t p = g.mul(els[i], els[j]);
            if (!m.test(p)) {
                m.set(p);
                els.push_back(p);
            }
            p = g.mul(els[j], els[i]);
            if (!m.test(p)) {
                m.set(p);
                els.push_back(p);
            }
        }
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// GroupHom

bool GroupHom::is_bijective() const {
    if (source->order() != target->order()) return false;
    std::vector<char> seen(target->order(), 0);
    for (uint16_t y : image_of) {
        if (seen[y]) return false;
        seen[y] = 1;
    }
    return true;
}

GroupHom GroupHom::inverse() const {
    if (!is_bijective()) throw validation_error("hom is not bijective");
    GroupHom inv;
    inv.source = target;
    inv.target = source;
    inv.image_of.resize(source->order());
    for (uint16_t x = 0; x < source->order(); ++x) inv.image_of[image_of[x]] = x;
    return inv;
}

GroupHom GroupHom::compose(const GroupHom& outer, const GroupHom& inner) {
    if (inner.target.get() != outer.source.get())
        throw validation_error("hom composition: middle groups differ");
    GroupHom h;
    h.source = inner.source;
    h.target = outer.target;
    h.image_of.reserve(inner.image_of.size());
    for (uint16_t y : inner.image_of) h.image_of.push_back(outer.image_of[y]);
    return h;
}

void GroupHom::validate() const {
    if (!source || !target || image_of.size() != source->order())
        throw validation_error("hom: bad shape");
    if (image_of[source->identity()] != target->identity())
        throw validation_error("hom: identity not preserved");
    unsigned n = source->order();
    for (uint16_t a = 0; a < n; ++a)
        for (uint16_t b = 0; b < n; ++b)
            if (image_of[source->mul(a, b)] != target->mul(image_of[a], image_of[b]))
                throw validation_error("hom: not multiplicative");
}

GroupHom identity_hom(const GroupPtr& g) {
    GroupHom h;
    h.source = g;
    h.target = g;
    h.image_of.resize(g->order());
    std::iota(h.image_of.begin(), h.image_of.end(), 0);
    return h;
}

GroupHom trivial_hom(const GroupPtr& source, const GroupPtr& target) {
    GroupHom h;
    h.source = source;
    h.target = target;
    h.image_of.assign(source->order(), target->identity());
    return h;
}

// ---------------------------------------------------------------------------
// Group construction

GroupPtr Group::from_permutations(std::string name, unsigned degree,
                                  const std::vector<std::vector<unsigned>>& generators,
                                  const Caps& caps) {
    using Perm = std::vector<uint16_t>;
    for (const auto& gen : generators) {
        if (gen.size() != degree) throw validation_error("generator degree mismatch in " + name);
        std::vector<char> seen(degree, 0);
        for (unsigned v : gen) {
            if (v >= degree || seen[v]) throw validation_error("generator is not a bijection in " + name);
            seen[v] = 1;
        }
    }

    Perm id(degree);
    std::iota(id.begin(), id.end(), 0);
    std::vector<Perm> gens;
    for (const auto& g : generators) gens.emplace_back(g.begin(), g.end());

    std::vector<Perm> elems{id};
    std::map<Perm, uint16_t> index{{id, 0}};
    // Breadth-first over generator words; a word w extends to w*g, apply g first.
    for (size_t head = 0; head < elems.size(); ++head) {
        Perm cur = elems[head];
        for (const Perm& g : gens) {
            Perm next(degree);
            for (unsigned x = 0; x < degree; ++x) next[x] = cur[g[x]];
            if (index.emplace(next, static_cast<uint16_t>(elems.size())).second) {
                if (elems.size() + 1 > caps.base_order)
                    throw resource_error("group closure of " + name + " exceeds base order cap " +
                                         std::to_string(caps.base_order));
                elems.push_back(std::move(next));
            }
        }
    }

    unsigned n = static_cast<unsigned>(elems.size());
    std::vector<uint16_t> table(static_cast<size_t>(n) * n);
    for (unsigned a = 0; a < n; ++a)
        for (unsigned b = 0; b < n; ++b) {
            Perm prod(degree);
            for (unsigned x = 0; x < degree; ++x) prod[x] = elems[a][elems[b][x]];
            table[a * n + b] = index.at(prod);
        }
    return from_table(std::move(name), n, std::move(table));
}

GroupPtr Group::from_table(std::string name, unsigned order, std::vector<uint16_t> table) {
    if (order == 0 || table.size() != static_cast<size_t>(order) * order)
        throw validation_error("group table has wrong shape: " + name);
    auto g = std::shared_ptr<Group>(new Group());
    g->name_ = std::move(name);
    g->order_ = order;
    g->table_ = std::move(table);
    g->finish_construction();
    g->self_ = g;
    return g;
}

void Group::finish_construction() {
    unsigned n = order_;
    for (uint16_t x = 0; x < n; ++x)
        if (mul(identity_, x) != x || mul(x, identity_) != x)
            throw validation_error("group " + name_ + ": element 0 is not an identity");

    inverse_.assign(n, 0);
    std::vector<char> has_inv(n, 0);
    for (uint16_t a = 0; a < n; ++a)
        for (uint16_t b = 0; b < n; ++b)
            if (mul(a, b) == identity_ && mul(b, a) == identity_) {
                inverse_[a] = b;
                has_inv[a] = 1;
            }
    for (uint16_t a = 0; a < n; ++a)
        if (!has_inv[a]) throw validation_error("group " + name_ + ": element without inverse");

    element_orders_.assign(n, 1);
    for (uint16_t a = 0; a < n; ++a) {
        unsigned k = 1;
        uint16_t p = a;
        while (p != identity_) {
            p = mul(p, a);
            ++k;
        }
        element_orders_[a] = k;
    }

    abelian_ = true;
    center_size_ = 0;
    for (uint16_t a = 0; a < n; ++a) {
        bool central = true;
        for (uint16_t b = 0; b < n; ++b)
            if (mul(a, b) != mul(b, a)) {
                central = false;
                abelian_ = false;
                break;
            }
        if (central) ++center_size_;
    }
}

bool Group::check_associative() const {
    for (uint16_t a = 0; a < order_; ++a)
        for (uint16_t b = 0; b < order_; ++b)
            for (uint16_t c = 0; c < order_; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Subgroup lattice

int64_t SubgroupData::mu(uint32_t k, uint32_t h) const {
    const auto& b = below[h];
    auto it = std::lower_bound(b.begin(), b.end(), k);
    if (it == b.end() || *it != k) throw validation_error("moebius: subgroups are incomparable");
    return moebius[h][static_cast<size_t>(it - b.begin())];
}

const SubgroupData& Group::subgroups() const {
    std::call_once(sub_once_, [this] {
        auto data = std::make_unique<SubgroupData>();
        unsigned n = order_;

        struct Rec {
            Mask mask;
            std::vector<uint16_t> elems;
        };
        std::vector<Rec> recs;
        std::unordered_map<Mask, uint32_t, MaskHash> seen;

        Mask triv(n);
        triv.set(identity_);
        recs.push_back({triv, {identity_}});
        seen.emplace(triv, 0);

        for (size_t head = 0; head < recs.size(); ++head) {
            // recs[head] is copied: closing extensions appends to recs.
            Rec cur = recs[head];
            for (uint16_t g = 0; g < n; ++g) {
                if (cur.mask.test(g)) continue;
                Mask m = cur.mask;
                std::vector<uint16_t> els = cur.elems;
                m.set(g);
                els.push_back(g);
                close_under_products(*this, els, m, cur.elems.size());
                if (seen.emplace(m, static_cast<uint32_t>(recs.size())).second)
                    recs.push_back({std::move(m), std::move(els)});
            }
        }

        for (auto& r : recs) std::sort(r.elems.begin(), r.elems.end());
        std::sort(recs.begin(), recs.end(), [](const Rec& a, const Rec& b) {
            if (a.elems.size() != b.elems.size()) return a.elems.size() < b.elems.size();
            return a.elems < b.elems;
        });

        unsigned ns = static_cast<unsigned>(recs.size());
        data->n_subgroups = ns;
        data->mask.reserve(ns);
        data->elems.reserve(ns);
        data->size.reserve(ns);
        for (uint32_t i = 0; i < ns; ++i) {
            data->index_of.emplace(recs[i].mask, i);
            data->mask.push_back(std::move(recs[i].mask));
            data->size.push_back(static_cast<unsigned>(recs[i].elems.size()));
            data->elems.push_back(std::move(recs[i].elems));
        }
        data->trivial_index = 0;
        data->full_index = ns - 1;

        // Conjugation action table and normalizers in one sweep.
        data->conj_action.assign(static_cast<size_t>(ns) * n, 0);
        data->normalizer.assign(ns, 0);
        for (uint32_t s = 0; s < ns; ++s) {
            Mask norm(n);
            for (uint16_t g = 0; g < n; ++g) {
                uint32_t image;
                if (abelian_) {
                    image = s;
                } else {
                    Mask cm(n);
                    for (uint16_t x : data->elems[s]) cm.set(conj(g, x));
                    image = data->index_of.at(cm);
                }
                data->conj_action[static_cast<size_t>(s) * n + g] = image;
                if (image == s) norm.set(g);
            }
            data->normalizer[s] = data->index_of.at(norm);
        }

        // Conjugacy classes, ordered by least member index.
        data->class_of.assign(ns, UINT32_MAX);
        for (uint32_t s = 0; s < ns; ++s) {
            if (data->class_of[s] != UINT32_MAX) continue;
            uint32_t cls = static_cast<uint32_t>(data->class_rep.size());
            std::vector<uint32_t> members;
            for (uint16_t g = 0; g < n; ++g) {
                uint32_t im = data->conj_action[static_cast<size_t>(s) * n + g];
                if (data->class_of[im] == UINT32_MAX) {
                    data->class_of[im] = cls;
                    members.push_back(im);
                }
            }
            std::sort(members.begin(), members.end());
            data->class_rep.push_back(members.front());
            data->class_members.push_back(std::move(members));
        }

        // Containment lists and Moebius values mu(K, H) below each H.
        data->below.resize(ns);
        data->moebius.resize(ns);
        for (uint32_t h = 0; h < ns; ++h) {
            auto& b = data->below[h];
            for (uint32_t k = 0; k <= h; ++k)
                if (data->size[k] <= data->size[h] && data->mask[k].subset_of(data->mask[h]))
                    b.push_back(k);
            auto& mu = data->moebius[h];
            mu.assign(b.size(), 0);
            mu.back() = 1;  // b.back() == h
            for (size_t pos = b.size() - 1; pos-- > 0;) {
                int64_t acc = 0;
                for (size_t q = pos + 1; q < b.size(); ++q)
                    if (data->mask[b[pos]].subset_of(data->mask[b[q]])) acc += mu[q];
                mu[pos] = -acc;
            }
        }

        for (uint32_t s = 0; s < ns; ++s)
            if (data->normalizer[s] == data->full_index) data->normals.push_back(s);

        for (uint32_t nrm : data->normals) {
            if (nrm == data->trivial_index) continue;
            bool minimal = true;
            for (uint32_t other : data->normals) {
                if (other == data->trivial_index || other == nrm) continue;
                if (data->size[other] < data->size[nrm] && data->mask[other].subset_of(data->mask[nrm])) {
                    minimal = false;
                    break;
                }
            }
            if (minimal) data->minimal_normals.push_back(nrm);
        }

        for (uint32_t h = 0; h + 1 < ns; ++h) {
            bool maximal = true;
            for (uint32_t k = h + 1; k + 1 < ns; ++k)
                if (data->size[k] > data->size[h] && data->mask[h].subset_of(data->mask[k])) {
                    maximal = false;
                    break;
                }
            if (maximal) data->maximal_subgroups.push_back(h);
        }

        sub_ = std::move(data);
    });
    return *sub_;
}

const std::vector<int32_t>& Group::mark_table() const {
    std::call_once(marks_once_, [this] {
        const auto& d = subgroups();
        unsigned nc = d.n_classes();
        marks_.assign(static_cast<size_t>(nc) * nc, 0);
        for (unsigned hc = 0; hc < nc; ++hc) {
            uint32_t hrep = d.class_rep[hc];
            int64_t norm = d.size[d.normalizer[hrep]];
            for (unsigned kc = 0; kc < nc; ++kc) {
                uint32_t krep = d.class_rep[kc];
                if (d.size[hrep] > d.size[krep]) continue;
                int64_t cnt = 0;
                for (uint32_t member : d.class_members[hc])
                    if (d.mask[member].subset_of(d.mask[krep])) ++cnt;
                int64_t total = cnt * norm;
                assert(total % d.size[krep] == 0);
                marks_[static_cast<size_t>(hc) * nc + kc] = static_cast<int32_t>(total / d.size[krep]);
            }
        }
    });
    return marks_;
}

// ---------------------------------------------------------------------------
// Slices

uint32_t SliceData::class_of(uint32_t t, uint32_t s) const {
    auto it = class_of_pair.find({t, s});
    if (it == class_of_pair.end()) throw validation_error("not a slice: S is not below T");
    return it->second;
}

const SliceData& Group::slices() const {
    std::call_once(slice_once_, [this] {
        const auto& d = subgroups();
        unsigned n = order_;
        auto data = std::make_unique<SliceData>();

        std::vector<std::pair<uint32_t, uint32_t>> pairs;
        for (uint32_t t = 0; t < d.n_subgroups; ++t)
            for (uint32_t s : d.below[t]) pairs.push_back({t, s});

        // Spec order: (|T|, |S|, lex T, lex S). Subgroup indices sort by
        // (size, lex), so compare sizes first, then indices.
        std::sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
            auto key = [&](const std::pair<uint32_t, uint32_t>& p) {
                return std::tuple(d.size[p.first], d.size[p.second], p.first, p.second);
            };
            return key(a) < key(b);
        });

        for (const auto& [t, s] : pairs) {
            if (data->class_of_pair.count({t, s})) continue;
            uint32_t cls = static_cast<uint32_t>(data->classes.size());
            unsigned stab = 0;
            for (uint16_t g = 0; g < n; ++g) {
                uint32_t ti = d.conj_action[static_cast<size_t>(t) * n + g];
                uint32_t si = d.conj_action[static_cast<size_t>(s) * n + g];
                data->class_of_pair.emplace(std::make_pair(ti, si), cls);
                if (ti == t && si == s) ++stab;
            }
            data->classes.push_back({t, s, stab});
        }

        // Slice table of marks: rows (V,U), columns (T,S);
        // entry = #{ gS in G/S : U <= gSg^-1 and V <= gTg^-1 }.
        unsigned nc = static_cast<unsigned>(data->classes.size());
        data->marks.assign(static_cast<size_t>(nc) * nc, 0);
        for (unsigned row = 0; row < nc; ++row) {
            uint32_t v = data->classes[row].big, u = data->classes[row].small;
            for (unsigned col = 0; col < nc; ++col) {
                uint32_t t = data->classes[col].big, s = data->classes[col].small;
                if (d.size[u] > d.size[s] || d.size[v] > d.size[t]) continue;
                int64_t cnt = 0;
                for (uint16_t g = 0; g < n; ++g) {
                    uint32_t uc = d.conj_action[static_cast<size_t>(u) * n + g];
                    uint32_t vc = d.conj_action[static_cast<size_t>(v) * n + g];
                    if (d.mask[uc].subset_of(d.mask[s]) && d.mask[vc].subset_of(d.mask[t])) ++cnt;
                }
                assert(cnt % d.size[s] == 0);
                data->marks[static_cast<size_t>(row) * nc + col] =
                    static_cast<int32_t>(cnt / d.size[s]);
            }
        }

        slice_ = std::move(data);
    });
    return *slice_;
}

// ---------------------------------------------------------------------------
// Handles and derived groups

Subgroup Group::subgroup(uint32_t index) const {
    const auto& d = subgroups();
    return Subgroup{this, d.elems[index]};
}

Mask Group::mask_of(const std::vector<uint16_t>& elements) const {
    Mask m(order_);
    for (uint16_t e : elements) {
        if (e >= order_) throw validation_error("element index out of range");
        m.set(e);
    }
    return m;
}

uint32_t Group::subgroup_index(const Subgroup& h) const {
    if (h.parent != this) throw validation_error("subgroup belongs to a different group");
    const auto& d = subgroups();
    auto it = d.index_of.find(mask_of(h.elements));
    if (it == d.index_of.end()) throw validation_error("element set is not a subgroup of " + name_);
    return it->second;
}

uint32_t Group::conj_subgroup(uint32_t index, uint16_t g) const {
    return subgroups().conj_action[static_cast<size_t>(index) * order_ + g];
}

const Group::DerivedGroup& Group::subgroup_group(uint32_t index) const {
    std::scoped_lock lock(derived_mutex_);
    auto it = subgroup_groups_.find(index);
    if (it != subgroup_groups_.end()) return it->second;

    const auto& d = subgroups();
    const auto& els = d.elems[index];
    unsigned m = static_cast<unsigned>(els.size());
    std::vector<uint16_t> pos(order_, 0);
    for (unsigned i = 0; i < m; ++i) pos[els[i]] = static_cast<uint16_t>(i);
    std::vector<uint16_t> table(static_cast<size_t>(m) * m);
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j) table[i * m + j] = pos[mul(els[i], els[j])];
    DerivedGroup dg;
    dg.group = Group::from_table(name_ + "[" + std::to_string(index) + "]", m, std::move(table));
    dg.hom.source = dg.group;
    dg.hom.target = self_.lock();
    dg.hom.image_of = els;
    return subgroup_groups_.emplace(index, std::move(dg)).first->second;
}

const Group::DerivedGroup& Group::quotient_group(uint32_t normal_index) const {
    std::scoped_lock lock(derived_mutex_);
    auto it = quotient_groups_.find(normal_index);
    if (it != quotient_groups_.end()) return it->second;

    const auto& d = subgroups();
    const auto& nels = d.elems[normal_index];
    unsigned n = order_;
    std::vector<uint16_t> coset_of(n, UINT16_MAX);
    std::vector<uint16_t> reps;
    for (uint16_t g = 0; g < n; ++g) {
        if (coset_of[g] != UINT16_MAX) continue;
        uint16_t id = static_cast<uint16_t>(reps.size());
        reps.push_back(g);
        for (uint16_t x : nels) coset_of[mul(g, x)] = id;
    }
    unsigned q = static_cast<unsigned>(reps.size());
    std::vector<uint16_t> table(static_cast<size_t>(q) * q);
    for (unsigned a = 0; a < q; ++a)
        for (unsigned b = 0; b < q; ++b) table[a * q + b] = coset_of[mul(reps[a], reps[b])];
    DerivedGroup dg;
    dg.group = Group::from_table(name_ + "/" + std::to_string(normal_index), q, std::move(table));
    dg.hom.source = self_.lock();
    dg.hom.target = dg.group;
    dg.hom.image_of.assign(coset_of.begin(), coset_of.end());
    return quotient_groups_.emplace(normal_index, std::move(dg)).first->second;
}

// ---------------------------------------------------------------------------
// Direct products

const ProductInfo& direct_product(const GroupPtr& a, const GroupPtr& b, const Caps& caps) {
    static std::mutex mtx;
    static std::map<std::pair<const Group*, const Group*>, ProductInfo> cache;
    if (static_cast<size_t>(a->order()) * b->order() > caps.product_order)
        throw resource_error("product " + a->name() + "x" + b->name() +
                             " exceeds product order cap " + std::to_string(caps.product_order));
    std::scoped_lock lock(mtx);
    auto key = std::make_pair(a.get(), b.get());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    ProductInfo info;
    if (a->order() == 1) {
        info = {b, trivial_hom(b, a), identity_hom(b), trivial_hom(a, b), identity_hom(b)};
    } else if (b->order() == 1) {
        info = {a, identity_hom(a), trivial_hom(a, b), identity_hom(a), trivial_hom(b, a)};
    } else {
        size_t n = static_cast<size_t>(a->order()) * b->order();
        unsigned na = a->order(), nb = b->order();
        std::vector<uint16_t> table(n * n);
        for (unsigned x = 0; x < n; ++x) {
            unsigned xa = x / nb, xb = x % nb;
            for (unsigned y = 0; y < n; ++y) {
                unsigned ya = y / nb, yb = y % nb;
                table[x * n + y] =
                    static_cast<uint16_t>(a->mul(xa, ya) * nb + b->mul(xb, yb));
            }
        }
        info.group = Group::from_table(a->name() + "x" + b->name(), static_cast<unsigned>(n),
                                       std::move(table));
        info.p1 = {info.group, a, {}};
        info.p2 = {info.group, b, {}};
        for (unsigned x = 0; x < n; ++x) {
            info.p1.image_of.push_back(static_cast<uint16_t>(x / nb));
            info.p2.image_of.push_back(static_cast<uint16_t>(x % nb));
        }
        info.i1 = {a, info.group, {}};
        for (unsigned xa = 0; xa < na; ++xa)
            info.i1.image_of.push_back(static_cast<uint16_t>(xa * nb));
        info.i2 = {b, info.group, {}};
        for (unsigned xb = 0; xb < nb; ++xb) info.i2.image_of.push_back(static_cast<uint16_t>(xb));
    }
    return cache.emplace(key, std::move(info)).first->second;
}

// ---------------------------------------------------------------------------
// Wrappers over the lattice data

std::vector<Subgroup> all_subgroups(const GroupPtr& g) {
    const auto& d = g->subgroups();
    std::vector<Subgroup> out;
    out.reserve(d.n_subgroups);
    for (uint32_t i = 0; i < d.n_subgroups; ++i) out.push_back(g->subgroup(i));
    return out;
}

std::vector<SubgroupClass> conjugacy_classes_of_subgroups(const GroupPtr& g) {
    const auto& d = g->subgroups();
    std::vector<SubgroupClass> out;
    out.reserve(d.n_classes());
    for (uint32_t c = 0; c < d.n_classes(); ++c) {
        SubgroupClass cls;
        cls.representative = g->subgroup(d.class_rep[c]);
        for (uint32_t m : d.class_members[c]) cls.members.push_back(g->subgroup(m));
        out.push_back(std::move(cls));
    }
    return out;
}

Subgroup normalizer(const GroupPtr& g, const Subgroup& h) {
    return g->subgroup(g->subgroups().normalizer[g->subgroup_index(h)]);
}

bool is_normal(const GroupPtr& g, const Subgroup& h) {
    const auto& d = g->subgroups();
    return d.normalizer[g->subgroup_index(h)] == d.full_index;
}

std::vector<Subgroup> normal_subgroups(const GroupPtr& g) {
    std::vector<Subgroup> out;
    for (uint32_t i : g->subgroups().normals) out.push_back(g->subgroup(i));
    return out;
}

std::pair<GroupPtr, GroupHom> quotient(const GroupPtr& g, const Subgroup& n) {
    uint32_t idx = g->subgroup_index(n);
    if (g->subgroups().normalizer[idx] != g->subgroups().full_index)
        throw validation_error("quotient: subgroup is not normal in " + g->name());
    const auto& dg = g->quotient_group(idx);
    return {dg.group, dg.hom};
}

std::vector<uint16_t> double_cosets(const GroupPtr& g, const Subgroup& h, const Subgroup& k) {
    g->subgroup_index(h);
    g->subgroup_index(k);
    unsigned n = g->order();
    std::vector<char> visited(n, 0);
    std::vector<uint16_t> reps;
    for (uint16_t x = 0; x < n; ++x) {
        if (visited[x]) continue;
        reps.push_back(x);
        for (uint16_t a : h.elements)
            for (uint16_t b : k.elements) visited[g->mul(g->mul(a, x), b)] = 1;
    }
    return reps;
}

std::vector<SliceClassInfo> slice_classes(const GroupPtr& g) {
    const auto& d = g->subgroups();
    const auto& sd = g->slices();
    std::vector<SliceClassInfo> out(sd.classes.size());
    for (size_t c = 0; c < sd.classes.size(); ++c) {
        out[c].representative = Slice{g.get(), g->subgroup(sd.classes[c].big),
                                      g->subgroup(sd.classes[c].small)};
        Mask stab(g->order());
        uint32_t t = sd.classes[c].big, s = sd.classes[c].small;
        for (uint16_t x = 0; x < g->order(); ++x)
            if (g->conj_subgroup(t, x) == t && g->conj_subgroup(s, x) == s) stab.set(x);
        out[c].stabilizer = Subgroup{g.get(), stab.elements()};
        (void)d;
    }
    for (const auto& [pair, cls] : sd.class_of_pair)
        out[cls].members.push_back(
            Slice{g.get(), g->subgroup(pair.first), g->subgroup(pair.second)});
    return out;
}

MoebiusTable moebius_table(const GroupPtr& g) {
    g->subgroups();
    return MoebiusTable(g);
}

int64_t MoebiusTable::value(const Subgroup& k, const Subgroup& h) const {
    uint32_t ki = group_->subgroup_index(k);
    uint32_t hi = group_->subgroup_index(h);
    return group_->subgroups().mu(ki, hi);
}

// ---------------------------------------------------------------------------
// Isomorphism and homomorphism search

namespace {

// Greedy minimal generating sequence by ascending element index.
std::vector<uint16_t> generating_sequence(const Group& g) {
    std::vector<uint16_t> gens;
    Mask closure(g.order());
    closure.set(g.identity());
    std::vector<uint16_t> els{g.identity()};
    while (els.size() < g.order()) {
        uint16_t pick = 0;
        for (uint16_t x = 0; x < g.order(); ++x)
            if (!closure.test(x)) {
                pick = x;
                break;
            }
        gens.push_back(pick);
        size_t old = els.size();
        els.push_back(pick);
        closure.set(pick);
        close_under_products(g, els, closure, old);
    }
    return gens;
}

struct MappedClosure {
    std::vector<uint16_t> els;          // elements of the source closure
    std::vector<uint16_t> image;        // per source element; UINT16_MAX = unset
    std::vector<char> target_used;      // for injective searches
};

// Extends the partially mapped closure by one generator/image pair. Returns
// false on any conflict with the homomorphism property (or injectivity).
bool extend_mapped_closure(const Group& g, const Group& h, MappedClosure& mc, uint16_t gen,
                           uint16_t img, bool injective, const GroupHom* cs, const GroupHom* ct) {
    auto set_image = [&](uint16_t x, uint16_t y) -> bool {
        if (mc.image[x] != UINT16_MAX) return mc.image[x] == y;
        if (injective) {
            if (mc.target_used[y]) return false;
            mc.target_used[y] = 1;
        }
        if (cs && ct && ct->image_of[y] != cs->image_of[x]) return false;
        mc.image[x] = y;
        mc.els.push_back(x);
        return true;
    };
    if (mc.image[gen] != UINT16_MAX) return mc.image[gen] == img;
    size_t old = mc.els.size();
    if (!set_image(gen, img)) return false;
    for (size_t i = old; i < mc.els.size(); ++i) {
        for (size_t j = 0; j <= i; ++j) {
            uint16_t a = mc.els[i], b = mc.els[j];
            if (!set_image(g.mul(a, b), h.mul(mc.image[a], mc.image[b]))) return false;
            if (!set_image(g.mul(b, a), h.mul(mc.image[b], mc.image[a]))) return false;
        }
    }
    return true;
}

bool search_maps(const Group& g, const Group& h, const std::vector<uint16_t>& gens, size_t depth,
                 MappedClosure mc, bool injective, const GroupHom* cs, const GroupHom* ct,
                 const std::function<bool(const std::vector<uint16_t>&)>& emit) {
    if (depth == gens.size()) return emit(mc.image);
    uint16_t gen = gens[depth];
    unsigned need = g.element_orders()[gen];
    for (uint16_t img = 0; img < h.order(); ++img) {
        unsigned io = h.element_orders()[img];
        if (injective ? io != need : need % io != 0) continue;
        MappedClosure next = mc;
        if (!extend_mapped_closure(g, h, next, gen, img, injective, cs, ct)) continue;
        if (search_maps(g, h, gens, depth + 1, std::move(next), injective, cs, ct, emit))
            return true;
    }
    return false;
}

}  // namespace

std::optional<GroupHom> find_isomorphism(const GroupPtr& g, const GroupPtr& h,
                                         const GroupHom* constraint_source,
                                         const GroupHom* constraint_target) {
    if (g->order() != h->order() || g->abelian() != h->abelian() ||
        g->center_size() != h->center_size())
        return std::nullopt;
    auto profile = [](const Group& x) {
        std::vector<unsigned> p = x.element_orders();
        std::sort(p.begin(), p.end());
        return p;
    };
    if (profile(*g) != profile(*h)) return std::nullopt;
    if (!constraint_source && g->subgroups().n_classes() != h->subgroups().n_classes())
        return std::nullopt;

    auto gens = generating_sequence(*g);
    MappedClosure mc;
    mc.els = {g->identity()};
    mc.image.assign(g->order(), UINT16_MAX);
    mc.image[g->identity()] = h->identity();
    mc.target_used.assign(h->order(), 0);
    mc.target_used[h->identity()] = 1;

    std::optional<GroupHom> result;
    search_maps(*g, *h, gens, 0, std::move(mc), true, constraint_source, constraint_target,
                [&](const std::vector<uint16_t>& image) {
                    result = GroupHom{g, h, image};
                    return true;
                });
    return result;
}

std::optional<GroupHom> are_isomorphic(const GroupPtr& g, const GroupPtr& h) {
    return find_isomorphism(g, h);
}

std::vector<GroupHom> all_homomorphisms(const GroupPtr& source, const GroupPtr& target) {
    auto gens = generating_sequence(*source);
    MappedClosure mc;
    mc.els = {source->identity()};
    mc.image.assign(source->order(), UINT16_MAX);
    mc.image[source->identity()] = target->identity();

    std::vector<GroupHom> out;
    search_maps(*source, *target, gens, 0, std::move(mc), false, nullptr, nullptr,
                [&](const std::vector<uint16_t>& image) {
                    out.push_back(GroupHom{source, target, image});
                    return false;  // keep enumerating
                });
    return out;
}

}  // namespace gbf
