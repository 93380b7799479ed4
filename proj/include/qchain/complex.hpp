#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qchain/matrix.hpp"

namespace qchain {

struct ValidationIssue {
    std::string kind;  // "shape", "d2", "chain-map", "axiom", ...
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string summary() const {
        if (issues.empty())
            return "ok";
        std::ostringstream os;
        for (const auto& i : issues)
            os << "[" << i.kind << "] " << i.detail << "\n";
        return os.str();
    }
};

// Finite window of a cochain complex: spaces C^k for k_min <= k <= k_max and
// differentials d_k : C^k -> C^{k+1} stored as dims(k+1) x dims(k) matrices.
// Degrees outside the window are zero.
struct Complex {
    int k_min = 0;
    int k_max = 0;
    std::map<int, int> dims;
    std::map<int, RationalMatrix> diff;                 // key k: d_k, k in [k_min, k_max-1]
    std::map<int, std::vector<std::string>> labels;     // optional basis labels

    Complex() = default;
    Complex(int kmin, int kmax) : k_min(kmin), k_max(kmax) {
        if (kmax < kmin)
            throw invalid_input("complex window empty");
    }

    int dim(int k) const {
        auto it = dims.find(k);
        return it == dims.end() ? 0 : it->second;
    }

    RationalMatrix d(int k) const {
        auto it = diff.find(k);
        if (it != diff.end())
            return it->second;
        return RationalMatrix(dim(k + 1), dim(k));
    }

    void set_dim(int k, int n) {
        if (k < k_min || k > k_max)
            throw invalid_input("degree outside window");
        dims[k] = n;
    }

    void set_diff(int k, RationalMatrix m) {
        if (k < k_min || k >= k_max)
            throw invalid_input("differential degree outside window");
        diff[k] = std::move(m);
    }

    long long euler_characteristic() const {
        long long chi = 0;
        for (int k = k_min; k <= k_max; ++k)
            chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(dim(k));
        return chi;
    }
};

// Shape consistency and d^2 = 0 at interior degrees; the two failure kinds
// are reported separately.
inline ValidationReport validate_complex(const Complex& c) {
    ValidationReport rep;
    for (int k = c.k_min; k < c.k_max; ++k) {
        RationalMatrix dk = c.d(k);
        if (dk.rows() != c.dim(k + 1) || dk.cols() != c.dim(k)) {
            std::ostringstream os;
            os << "d_" << k << " has shape " << dk.rows() << "x" << dk.cols()
               << ", expected " << c.dim(k + 1) << "x" << c.dim(k);
            rep.issues.push_back({"shape", os.str()});
        }
    }
    if (!rep.ok())
        return rep;
    for (int k = c.k_min; k + 1 < c.k_max; ++k) {
        RationalMatrix prod = c.d(k + 1) * c.d(k);
        if (!prod.is_zero()) {
            const auto& e = *prod.entries().begin();
            std::ostringstream os;
            os << "d_" << k + 1 << " d_" << k << " != 0, entry (" << e.first.first << ","
               << e.first.second << ") = " << e.second.str();
            rep.issues.push_back({"d2", os.str()});
        }
    }
    return rep;
}

struct CohomologyEntry {
    int dim = 0;
    std::vector<Vec> reps;          // canonical representatives in C^k coordinates
    std::vector<Vec> image;         // canonical basis of im d_{k-1}
    std::vector<Vec> kernel;        // canonical basis of ker d_k
    bool window_truncated = false;  // boundary degree: missing in/out differential
};

using CohomologyTable = std::map<int, CohomologyEntry>;

// H^k = ker d_k / im d_{k-1} at every window degree; the window boundaries
// are flagged since the truncation invents their missing differentials.
inline CohomologyTable cohomology(const Complex& c) {
    ValidationReport v = validate_complex(c);
    if (!v.ok())
        throw invalid_input("cohomology of invalid complex:\n" + v.summary());
    CohomologyTable out;
    for (int k = c.k_min; k <= c.k_max; ++k) {
        CohomologyEntry e;
        e.kernel = k == c.k_max ? RationalMatrix::identity(c.dim(k)).columns()
                                : kernel_basis(c.d(k));
        e.kernel = canonical_span(e.kernel, c.dim(k));
        e.image = k == c.k_min ? std::vector<Vec>{} : column_space_basis(c.d(k - 1));
        e.reps = quotient_basis(e.kernel, e.image, c.dim(k));
        e.dim = static_cast<int>(e.reps.size());
        e.window_truncated = (k == c.k_min || k == c.k_max);
        out[k] = std::move(e);
    }
    return out;
}

// Degree-preserving chain map between complexes on the same window.
struct ChainMap {
    Complex source;
    Complex target;
    std::map<int, RationalMatrix> components;  // key k: f_k, dims tgt(k) x src(k)

    RationalMatrix at(int k) const {
        auto it = components.find(k);
        if (it != components.end())
            return it->second;
        return RationalMatrix(target.dim(k), source.dim(k));
    }
};

inline ValidationReport validate_chain_map(const ChainMap& f) {
    ValidationReport rep;
    if (f.source.k_min != f.target.k_min || f.source.k_max != f.target.k_max)
        rep.issues.push_back({"shape", "source and target windows differ"});
    ValidationReport vs = validate_complex(f.source);
    ValidationReport vt = validate_complex(f.target);
    for (auto& i : vs.issues)
        rep.issues.push_back({i.kind, "source: " + i.detail});
    for (auto& i : vt.issues)
        rep.issues.push_back({i.kind, "target: " + i.detail});
    if (!rep.ok())
        return rep;
    for (int k = f.source.k_min; k <= f.source.k_max; ++k) {
        RationalMatrix fk = f.at(k);
        if (fk.rows() != f.target.dim(k) || fk.cols() != f.source.dim(k)) {
            std::ostringstream os;
            os << "f_" << k << " has shape " << fk.rows() << "x" << fk.cols();
            rep.issues.push_back({"shape", os.str()});
        }
    }
    if (!rep.ok())
        return rep;
    for (int k = f.source.k_min; k < f.source.k_max; ++k) {
        RationalMatrix lhs = f.at(k + 1) * f.source.d(k);
        RationalMatrix rhs = f.target.d(k) * f.at(k);
        if (!(lhs == rhs)) {
            std::ostringstream os;
            os << "f_{k+1} d_k != d_k f_k at k = " << k;
            rep.issues.push_back({"chain-map", os.str()});
        }
    }
    return rep;
}

inline ChainMap negate(const ChainMap& f) {
    ChainMap g = f;
    for (auto& [k, m] : g.components)
        m = -m;
    return g;
}

inline ChainMap compose(const ChainMap& g, const ChainMap& f) {
    ChainMap h;
    h.source = f.source;
    h.target = g.target;
    for (int k = f.source.k_min; k <= f.source.k_max; ++k)
        h.components[k] = g.at(k) * f.at(k);
    return h;
}

// Degree-n layout of a mapping cone: the unshifted part (degree n of the
// map's source) and the shifted part (degree n-1 of its target).
struct ConeLayout {
    struct Part {
        int degree;
        int unshifted_dim;  // source^n
        int shifted_dim;    // target^{n-1}
    };
    std::string unshifted_tag = "c";  // "zeta" in the de Rham model
    std::string shifted_tag = "Y";    // "omega" in the de Rham model
    std::vector<Part> parts;
};

struct ConeResult {
    Complex complex;
    ConeLayout layout;
};

// Mapping cone with Cone(f)^n = source^n (+) target^{n-1} and
// d(c, Y) = (d c, f c - d Y); the cone of a valid chain map always satisfies
// d^2 = 0, and a d^2 failure here would expose a broken chain map.
inline ConeResult cone(const ChainMap& f) {
    ValidationReport v = validate_chain_map(f);
    if (!v.ok())
        throw invalid_input("cone of invalid chain map:\n" + v.summary());
    const Complex& a = f.source;
    const Complex& b = f.target;
    ConeResult out;
    out.complex = Complex(a.k_min, a.k_max + 1);
    for (int n = a.k_min; n <= a.k_max + 1; ++n) {
        int du = a.dim(n);
        int ds = b.dim(n - 1);
        out.complex.set_dim(n, du + ds);
        out.layout.parts.push_back({n, du, ds});
    }
    for (int n = a.k_min; n <= a.k_max; ++n) {
        int du = a.dim(n), ds = b.dim(n - 1);
        int du1 = a.dim(n + 1);
        RationalMatrix m(du1 + b.dim(n), du + ds);
        RationalMatrix da = a.d(n);
        for (const auto& [rc, val] : da.entries())
            m.set(rc.first, rc.second, val);
        RationalMatrix fn = f.at(n);
        for (const auto& [rc, val] : fn.entries())
            m.set(du1 + rc.first, rc.second, val);
        if (n - 1 >= b.k_min) {
            RationalMatrix db = b.d(n - 1);
            for (const auto& [rc, val] : db.entries())
                m.set(du1 + rc.first, du + rc.second, -val);
        }
        out.complex.set_diff(n, std::move(m));
    }
    ValidationReport cv = validate_complex(out.complex);
    if (!cv.ok())
        throw internal_error("cone failed d^2 = 0:\n" + cv.summary());
    return out;
}

// De Rham model constructor: the cone of the negated vertical map, tagged
// with the (zeta, omega) component names.
inline ConeResult symplectic_model(const ChainMap& vertical) {
    ConeResult out = cone(negate(vertical));
    out.layout.unshifted_tag = "zeta";
    out.layout.shifted_tag = "omega";
    return out;
}

// Matrix of the map induced on cohomology by a chain-level matrix
// F : C^a(X) -> C^b(Y), given the cohomology data at both ends.
inline RationalMatrix induced_on_cohomology(const RationalMatrix& F, const CohomologyEntry& src,
                                            const CohomologyEntry& tgt) {
    RationalMatrix out(tgt.dim, src.dim);
    std::vector<Vec> basis = tgt.reps;
    basis.insert(basis.end(), tgt.image.begin(), tgt.image.end());
    for (int j = 0; j < src.dim; ++j) {
        Vec img = F.apply(src.reps[j]);
        if (basis.empty()) {
            bool zero = true;
            for (const auto& x : img)
                zero = zero && x.is_zero();
            if (!zero)
                throw internal_error("induced map leaves the target cohomology");
            continue;
        }
        auto coords = coordinates_in(basis, img);
        if (!coords)
            throw internal_error("induced map image not closed in target");
        for (int i = 0; i < tgt.dim; ++i)
            out.set(i, j, (*coords)[i]);
    }
    return out;
}

// H^k(f) for every window degree, in the canonical representative bases.
inline std::map<int, RationalMatrix> induced_map(const ChainMap& f) {
    ValidationReport v = validate_chain_map(f);
    if (!v.ok())
        throw invalid_input("induced_map of invalid chain map:\n" + v.summary());
    CohomologyTable hs = cohomology(f.source);
    CohomologyTable ht = cohomology(f.target);
    std::map<int, RationalMatrix> out;
    for (int k = f.source.k_min; k <= f.source.k_max; ++k)
        out[k] = induced_on_cohomology(f.at(k), hs[k], ht[k]);
    return out;
}

// One node of the cone long exact sequence, with the exactness verdict
// computed from its incoming and outgoing arrows.
struct LesNode {
    std::string complex_name;  // "target" | "cone" | "source"
    int degree;
    int dim;
    int incoming_rank;
    int outgoing_kernel_dim;
    bool composite_zero;  // outgoing . incoming == 0
    bool exact;           // composite zero and rank(in) == dim ker(out)
};

struct LesArrow {
    std::string kind;  // "inclusion" | "projection" | "connecting"
    int from_index;    // indices into nodes
    int to_index;
    RationalMatrix matrix;
};

struct LongExactSequence {
    std::vector<LesNode> nodes;
    std::vector<LesArrow> arrows;
    bool all_exact = false;
    // Cohomology dims by degree for downstream consumers.
    std::map<int, int> source_h, target_h, cone_h;
    int k_min = 0, k_max = 0;  // window of source/target; cone runs to k_max+1

    // node layout: 0 = target@k_min-1, then (cone, source, target) per degree
    int cone_node_index(int k) const { return 1 + 3 * (k - k_min); }
    const RationalMatrix& inclusion_arrow(int k) const {
        return arrows[cone_node_index(k) - 1].matrix;  // H^{k-1}(target) -> H^k(cone)
    }
    const RationalMatrix& projection_arrow(int k) const {
        return arrows[cone_node_index(k)].matrix;  // H^k(cone) -> H^k(source)
    }
    const RationalMatrix& connecting_arrow(int k) const {
        return arrows[cone_node_index(k) + 1].matrix;  // H^k(source) -> H^k(target)
    }
};

// The long exact sequence of the cone of f,
//   ... -> H^{k-1}(target) -> H^k(Cone) -> H^k(source) --H(f)--> H^k(target) -> ...
// with explicit matrices for every arrow and an exactness verdict per node.
inline LongExactSequence cone_les(const ChainMap& f) {
    ConeResult cr = cone(f);
    CohomologyTable hs = cohomology(f.source);
    CohomologyTable ht = cohomology(f.target);
    CohomologyTable hc = cohomology(cr.complex);

    const Complex& a = f.source;
    const Complex& b = f.target;
    LongExactSequence les;
    les.k_min = a.k_min;
    les.k_max = a.k_max;
    for (int k = a.k_min; k <= a.k_max; ++k) {
        les.source_h[k] = hs[k].dim;
        les.target_h[k] = ht[k].dim;
    }
    for (int k = a.k_min; k <= a.k_max + 1; ++k)
        les.cone_h[k] = hc[k].dim;

    // chain-level arrows at degree k
    auto inclusion_matrix = [&](int k) {
        // target^{k-1} -> Cone^k, y |-> (0, y)
        RationalMatrix m(a.dim(k) + b.dim(k - 1), b.dim(k - 1));
        for (int i = 0; i < b.dim(k - 1); ++i)
            m.set(a.dim(k) + i, i, Rational(1));
        return m;
    };
    auto projection_matrix = [&](int k) {
        // Cone^k -> source^k, (c, y) |-> c
        RationalMatrix m(a.dim(k), a.dim(k) + b.dim(k - 1));
        for (int i = 0; i < a.dim(k); ++i)
            m.set(i, i, Rational(1));
        return m;
    };

    // Nodes in sequence order: ..., target@k-1, cone@k, source@k, target@k, ...
    // Padded with the zero degrees just outside the window so every real node
    // has both arrows.
    struct Slot {
        std::string name;
        int degree;
    };
    std::vector<Slot> slots;
    slots.push_back({"target", a.k_min - 1});
    for (int k = a.k_min; k <= a.k_max + 1; ++k) {
        slots.push_back({"cone", k});
        slots.push_back({"source", k});
        slots.push_back({"target", k});
    }
    auto entry_of = [&](const Slot& s) -> const CohomologyEntry* {
        static const CohomologyEntry empty{};
        if (s.name == "source")
            return (s.degree >= a.k_min && s.degree <= a.k_max) ? &hs[s.degree] : &empty;
        if (s.name == "target")
            return (s.degree >= b.k_min && s.degree <= b.k_max) ? &ht[s.degree] : &empty;
        return (s.degree >= cr.complex.k_min && s.degree <= cr.complex.k_max) ? &hc[s.degree] : &empty;
    };

    for (const auto& s : slots) {
        LesNode n;
        n.complex_name = s.name;
        n.degree = s.degree;
        n.dim = entry_of(s)->dim;
        n.incoming_rank = 0;
        n.outgoing_kernel_dim = n.dim;
        n.composite_zero = true;
        n.exact = false;
        les.nodes.push_back(n);
    }

    // Arrows between consecutive slots.
    for (size_t i = 0; i + 1 < slots.size(); ++i) {
        const Slot& from = slots[i];
        const Slot& to = slots[i + 1];
        const CohomologyEntry* es = entry_of(from);
        const CohomologyEntry* et = entry_of(to);
        RationalMatrix h(et->dim, es->dim);
        std::string kind;
        if (from.name == "target" && to.name == "cone") {
            kind = "inclusion";
            if (es->dim > 0)
                h = induced_on_cohomology(inclusion_matrix(to.degree), *es, *et);
        } else if (from.name == "cone" && to.name == "source") {
            kind = "projection";
            if (es->dim > 0)
                h = induced_on_cohomology(projection_matrix(from.degree), *es, *et);
        } else {
            kind = "connecting";  // H(f)
            if (es->dim > 0 && from.degree >= a.k_min && from.degree <= a.k_max)
                h = induced_on_cohomology(f.at(from.degree), *es, *et);
        }
        les.arrows.push_back({kind, static_cast<int>(i), static_cast<int>(i + 1), std::move(h)});
    }

    // Exactness verdicts.
    les.all_exact = true;
    for (size_t i = 0; i < slots.size(); ++i) {
        LesNode& n = les.nodes[i];
        const RationalMatrix* in = i > 0 ? &les.arrows[i - 1].matrix : nullptr;
        const RationalMatrix* out = i + 1 < slots.size() ? &les.arrows[i].matrix : nullptr;
        int in_rank = in ? rank(*in) : 0;
        int out_rank = out ? rank(*out) : 0;
        n.incoming_rank = in_rank;
        n.outgoing_kernel_dim = n.dim - out_rank;
        n.composite_zero = (!in || !out) ? true : (*out * *in).is_zero();
        n.exact = n.composite_zero && in_rank == n.outgoing_kernel_dim;
        if (i > 0 && i + 1 < slots.size())
            les.all_exact = les.all_exact && n.exact;
    }
    return les;
}

}  // namespace qchain
