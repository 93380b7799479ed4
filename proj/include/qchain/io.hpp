#pragma once

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "qchain/complex.hpp"
#include "qchain/double_complex.hpp"
#include "qchain/groupoid.hpp"
#include "qchain/lie_algebra.hpp"
#include "qchain/multivector.hpp"

namespace qchain {

inline constexpr const char* kToolName = "qchain";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kConeSignConvention =
    "Cone(f)^n = source^n (+) target^{n-1}; d(c,Y) = (d c, f c - d Y)";
inline constexpr const char* kTotalSignConvention = "d_Tot = horizontal + (-1)^p vertical";

using Json = nlohmann::ordered_json;

// FNV-1a over the raw bytes; stamped into every emitted table.
inline std::string fnv1a_hex(const std::string& bytes) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw invalid_input("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw invalid_input("cannot write file: " + path);
    out << content;
}

// --- matrices: row-major with explicit dims, rationals as "p/q" strings ---

inline Json matrix_to_json(const RationalMatrix& m) {
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    Json data = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int k = 0; k < m.cols(); ++k)
            row.push_back(m.at(i, k).str());
        data.push_back(std::move(row));
    }
    j["data"] = std::move(data);
    return j;
}

inline RationalMatrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw invalid_input("matrix document needs rows/cols/data");
    int rows = j.at("rows").get<int>();
    int cols = j.at("cols").get<int>();
    RationalMatrix m(rows, cols);
    const Json& data = j.at("data");
    if (static_cast<int>(data.size()) != rows)
        throw invalid_input("matrix data has wrong row count");
    for (int i = 0; i < rows; ++i) {
        const Json& row = data.at(i);
        if (static_cast<int>(row.size()) != cols)
            throw invalid_input("matrix data has ragged rows");
        for (int k = 0; k < cols; ++k)
            m.set(i, k, Rational::parse(row.at(k).get<std::string>()));
    }
    return m;
}

// --- complex: {window, dims, differentials} ---

inline Json complex_to_json(const Complex& c) {
    Json j;
    j["window"] = Json::array({c.k_min, c.k_max});
    Json dims = Json::object();
    for (int k = c.k_min; k <= c.k_max; ++k)
        dims[std::to_string(k)] = c.dim(k);
    j["dims"] = std::move(dims);
    Json diffs = Json::object();
    for (int k = c.k_min; k < c.k_max; ++k)
        diffs[std::to_string(k)] = matrix_to_json(c.d(k));
    j["differentials"] = std::move(diffs);
    return j;
}

inline Complex complex_from_json(const Json& j) {
    if (!j.contains("window") || !j.contains("dims"))
        throw invalid_input("complex document needs window and dims");
    Complex c(j.at("window").at(0).get<int>(), j.at("window").at(1).get<int>());
    for (const auto& [key, val] : j.at("dims").items())
        c.set_dim(std::stoi(key), val.get<int>());
    if (j.contains("differentials"))
        for (const auto& [key, val] : j.at("differentials").items())
            c.set_diff(std::stoi(key), matrix_from_json(val));
    return c;
}

// --- chain map: {source: file, target: file, components} ---

inline Json chain_map_to_json(const ChainMap& f, const std::string& source_file,
                              const std::string& target_file) {
    Json j;
    j["source"] = source_file;
    j["target"] = target_file;
    Json comp = Json::object();
    for (int k = f.source.k_min; k <= f.source.k_max; ++k)
        comp[std::to_string(k)] = matrix_to_json(f.at(k));
    j["components"] = std::move(comp);
    return j;
}

inline ChainMap chain_map_from_json(const Json& j, const std::string& base_dir) {
    if (!j.contains("source") || !j.contains("target") || !j.contains("components"))
        throw invalid_input("chain map document needs source/target/components");
    auto resolve = [&](const std::string& p) {
        std::filesystem::path fp(p);
        if (fp.is_relative())
            fp = std::filesystem::path(base_dir) / fp;
        return fp.string();
    };
    ChainMap f;
    f.source = complex_from_json(Json::parse(read_file(resolve(j.at("source").get<std::string>()))));
    f.target = complex_from_json(Json::parse(read_file(resolve(j.at("target").get<std::string>()))));
    for (const auto& [key, val] : j.at("components").items())
        f.components[std::stoi(key)] = matrix_from_json(val);
    return f;
}

// --- double complex: {p_range, q_range, dims, horizontal, vertical} keyed "p,q" ---

inline Json double_complex_to_json(const DoubleComplex& d) {
    Json j;
    j["p_range"] = Json::array({d.p_min, d.p_max});
    j["q_range"] = Json::array({d.q_min, d.q_max});
    auto key = [](int p, int q) { return std::to_string(p) + "," + std::to_string(q); };
    Json dims = Json::object(), hs = Json::object(), vs = Json::object();
    for (int p = d.p_min; p <= d.p_max; ++p)
        for (int q = d.q_min; q <= d.q_max; ++q) {
            dims[key(p, q)] = d.dim(p, q);
            if (p < d.p_max)
                hs[key(p, q)] = matrix_to_json(d.h(p, q));
            if (q < d.q_max)
                vs[key(p, q)] = matrix_to_json(d.v(p, q));
        }
    j["dims"] = std::move(dims);
    j["horizontal"] = std::move(hs);
    j["vertical"] = std::move(vs);
    return j;
}

inline std::pair<int, int> parse_bidegree(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw invalid_input("bidegree key must look like \"p,q\": " + s);
    return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
}

inline DoubleComplex double_complex_from_json(const Json& j) {
    if (!j.contains("p_range") || !j.contains("q_range") || !j.contains("dims"))
        throw invalid_input("double complex document needs p_range/q_range/dims");
    DoubleComplex d(j.at("p_range").at(0).get<int>(), j.at("p_range").at(1).get<int>(),
                    j.at("q_range").at(0).get<int>(), j.at("q_range").at(1).get<int>());
    for (const auto& [key, val] : j.at("dims").items()) {
        auto [p, q] = parse_bidegree(key);
        d.set_dim(p, q, val.get<int>());
    }
    if (j.contains("horizontal"))
        for (const auto& [key, val] : j.at("horizontal").items()) {
            auto [p, q] = parse_bidegree(key);
            d.set_h(p, q, matrix_from_json(val));
        }
    if (j.contains("vertical"))
        for (const auto& [key, val] : j.at("vertical").items()) {
            auto [p, q] = parse_bidegree(key);
            d.set_v(p, q, matrix_from_json(val));
        }
    return d;
}

// --- groupoid ---

inline Json groupoid_to_json(const FiniteGroupoid& g) {
    Json j;
    j["name"] = g.name;
    j["objects"] = g.objects;
    Json arrows = Json::array();
    for (int a = 0; a < g.n_arrows(); ++a) {
        Json ja;
        ja["id"] = g.arrow_names[a];
        ja["src"] = g.objects[g.src[a]];
        ja["tgt"] = g.objects[g.tgt[a]];
        arrows.push_back(std::move(ja));
    }
    j["arrows"] = std::move(arrows);
    Json units = Json::object();
    for (int x = 0; x < g.n_objects(); ++x)
        units[g.objects[x]] = g.arrow_names[g.unit[x]];
    j["units"] = std::move(units);
    Json inv = Json::object();
    for (int a = 0; a < g.n_arrows(); ++a)
        inv[g.arrow_names[a]] = g.arrow_names[g.inv[a]];
    j["inv"] = std::move(inv);
    Json comp = Json::array();
    for (int a = 0; a < g.n_arrows(); ++a)
        for (int b = 0; b < g.n_arrows(); ++b)
            if (g.comp[a][b] >= 0) {
                Json jc;
                jc["left"] = g.arrow_names[a];
                jc["right"] = g.arrow_names[b];
                jc["result"] = g.arrow_names[g.comp[a][b]];
                comp.push_back(std::move(jc));
            }
    j["comp"] = std::move(comp);
    return j;
}

inline FiniteGroupoid groupoid_from_json(const Json& j) {
    if (!j.contains("objects") || !j.contains("arrows"))
        throw invalid_input("groupoid document needs objects and arrows");
    FiniteGroupoid g;
    g.name = j.value("name", "groupoid");
    std::map<std::string, int> obj_idx, arr_idx;
    for (const auto& o : j.at("objects")) {
        obj_idx[o.get<std::string>()] = g.n_objects();
        g.objects.push_back(o.get<std::string>());
    }
    auto object_of = [&](const std::string& s) {
        auto it = obj_idx.find(s);
        if (it == obj_idx.end())
            throw invalid_input("unknown object label: " + s);
        return it->second;
    };
    for (const auto& a : j.at("arrows")) {
        arr_idx[a.at("id").get<std::string>()] = g.n_arrows();
        g.arrow_names.push_back(a.at("id").get<std::string>());
        g.src.push_back(object_of(a.at("src").get<std::string>()));
        g.tgt.push_back(object_of(a.at("tgt").get<std::string>()));
    }
    auto arrow_of = [&](const std::string& s) {
        auto it = arr_idx.find(s);
        if (it == arr_idx.end())
            throw invalid_input("unknown arrow label: " + s);
        return it->second;
    };
    g.unit.assign(g.n_objects(), -1);
    for (const auto& [obj, arr] : j.at("units").items())
        g.unit[object_of(obj)] = arrow_of(arr.get<std::string>());
    for (int x = 0; x < g.n_objects(); ++x)
        if (g.unit[x] < 0)
            throw invalid_input("missing unit for object " + g.objects[x]);
    g.inv.assign(g.n_arrows(), -1);
    for (const auto& [a, b] : j.at("inv").items())
        g.inv[arrow_of(a)] = arrow_of(b.get<std::string>());
    for (int a = 0; a < g.n_arrows(); ++a)
        if (g.inv[a] < 0)
            throw invalid_input("missing inverse for arrow " + g.arrow_names[a]);
    g.comp.assign(g.n_arrows(), std::vector<int>(g.n_arrows(), -1));
    for (const auto& c : j.at("comp"))
        g.comp[arrow_of(c.at("left").get<std::string>())][arrow_of(c.at("right").get<std::string>())] =
            arrow_of(c.at("result").get<std::string>());
    return g;
}

// --- Lie algebra: 1-based indices i < j, omitted pairs mean zero bracket ---

inline Json lie_to_json(const LieAlgebra& g) {
    Json j;
    j["name"] = g.name;
    j["dim"] = g.n;
    Json brackets = Json::array();
    for (const auto& [ij, coeffs] : g.c) {
        Json b;
        b["i"] = ij.first + 1;
        b["j"] = ij.second + 1;
        Json cs = Json::array();
        for (const auto& x : coeffs)
            cs.push_back(x.str());
        b["coeffs"] = std::move(cs);
        brackets.push_back(std::move(b));
    }
    j["brackets"] = std::move(brackets);
    return j;
}

inline LieAlgebra lie_from_json(const Json& j) {
    if (!j.contains("dim") || !j.contains("brackets"))
        throw invalid_input("lie algebra document needs dim and brackets");
    LieAlgebra g;
    g.name = j.value("name", "lie-algebra");
    g.n = j.at("dim").get<int>();
    if (g.n < 0)
        throw invalid_input("negative dimension");
    for (const auto& b : j.at("brackets")) {
        int i = b.at("i").get<int>(), jj = b.at("j").get<int>();
        if (i < 1 || jj < 1 || i > g.n || jj > g.n || i >= jj)
            throw invalid_input("bracket indices must satisfy 1 <= i < j <= dim");
        Vec coeffs;
        for (const auto& x : b.at("coeffs"))
            coeffs.push_back(Rational::parse(x.get<std::string>()));
        g.set_bracket(i - 1, jj - 1, std::move(coeffs));
    }
    return g;
}

// --- multivector: terms with 1-based index lists ---

inline Json multivector_to_json(const PolyMultivector& p) {
    Json j;
    Json sp;
    sp["names"] = p.space.names;
    Json mask = Json::array();
    for (int i = 0; i < p.space.dim(); ++i)
        if (p.space.is_fibre(i))
            mask.push_back(p.space.names[i]);
    sp["fibre_mask"] = std::move(mask);
    j["space"] = std::move(sp);
    j["degree"] = p.degree;
    Json terms = Json::array();
    for (const auto& [idx, poly] : p.terms) {
        Json t;
        Json ix = Json::array();
        for (int i : idx)
            ix.push_back(i + 1);
        t["index"] = std::move(ix);
        Json mono_list = Json::array();
        for (const auto& [m, c] : poly.terms) {
            Json mt;
            Json mono = Json::object();
            for (int i = 0; i < p.space.dim(); ++i)
                if (m[i] > 0)
                    mono[p.space.names[i]] = m[i];
            mt["monomial"] = std::move(mono);
            mt["coeff"] = c.str();
            mono_list.push_back(std::move(mt));
        }
        t["poly"] = std::move(mono_list);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

inline PolyMultivector multivector_from_json(const Json& j) {
    if (!j.contains("space") || !j.contains("degree") || !j.contains("terms"))
        throw invalid_input("multivector document needs space/degree/terms");
    std::vector<std::string> names;
    for (const auto& s : j.at("space").at("names"))
        names.push_back(s.get<std::string>());
    std::vector<bool> mask(names.size(), false);
    if (j.at("space").contains("fibre_mask"))
        for (const auto& s : j.at("space").at("fibre_mask")) {
            auto it = std::find(names.begin(), names.end(), s.get<std::string>());
            if (it == names.end())
                throw invalid_input("fibre_mask names a missing coordinate: " + s.get<std::string>());
            mask[it - names.begin()] = true;
        }
    bool any = false;
    for (bool b : mask)
        any = any || b;
    CoordinateSpace sp(names, any ? mask : std::vector<bool>{});
    PolyMultivector p(sp, j.at("degree").get<int>());
    for (const auto& t : j.at("terms")) {
        std::vector<int> idx;
        for (const auto& i : t.at("index")) {
            int v = i.get<int>();
            if (v < 1 || v > sp.dim())
                throw invalid_input("multivector index out of range");
            idx.push_back(v - 1);
        }
        Polynomial poly(sp.dim());
        for (const auto& mt : t.at("poly")) {
            Monomial m(sp.dim(), 0);
            for (const auto& [nm, e] : mt.at("monomial").items()) {
                auto it = std::find(names.begin(), names.end(), nm);
                if (it == names.end())
                    throw invalid_input("monomial names a missing coordinate: " + nm);
                m[it - names.begin()] = e.get<int>();
            }
            poly.add_term(m, Rational::parse(mt.at("coeff").get<std::string>()));
        }
        p.add_term(idx, poly);
    }
    return p;
}

// --- input kind detection ---

enum class InputKind { lie_algebra, groupoid, complex, chain_map, double_complex, multivector };

inline InputKind detect_kind(const Json& j) {
    if (!j.is_object())
        throw invalid_input("input document must be a JSON object");
    if (j.contains("brackets"))
        return InputKind::lie_algebra;
    if (j.contains("objects") && j.contains("arrows"))
        return InputKind::groupoid;
    if (j.contains("p_range"))
        return InputKind::double_complex;
    if (j.contains("components"))
        return InputKind::chain_map;
    if (j.contains("window"))
        return InputKind::complex;
    if (j.contains("space") && j.contains("terms"))
        return InputKind::multivector;
    throw invalid_input("unrecognized input document");
}

// --- result tables ---

struct ResultRow {
    std::string object;
    int degree = 0;
    std::optional<int> weight;
    long long dimension = 0;
};

struct ResultTable {
    std::vector<ResultRow> rows;
    std::map<std::string, std::string> metadata;

    void stamp(const std::string& input_bytes) {
        metadata["tool"] = kToolName;
        metadata["version"] = kToolVersion;
        metadata["input_hash"] = fnv1a_hex(input_bytes);
        metadata["cone_sign"] = kConeSignConvention;
        metadata["total_sign"] = kTotalSignConvention;
    }

    void sort() {
        std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
            if (a.object != b.object)
                return a.object < b.object;
            if (a.degree != b.degree)
                return a.degree < b.degree;
            return a.weight.value_or(-1) < b.weight.value_or(-1);
        });
    }

    std::string to_json() const {
        Json j;
        Json meta = Json::object();
        for (const auto& [k, v] : metadata)
            meta[k] = v;
        j["metadata"] = std::move(meta);
        Json rws = Json::array();
        for (const auto& r : rows) {
            Json row;
            row["object"] = r.object;
            row["degree"] = r.degree;
            if (r.weight)
                row["weight"] = *r.weight;
            row["dimension"] = r.dimension;
            rws.push_back(std::move(row));
        }
        j["rows"] = std::move(rws);
        return j.dump(2) + "\n";
    }

    std::string to_csv() const {
        std::ostringstream os;
        os << "object,degree,weight,dimension\n";
        for (const auto& r : rows) {
            os << r.object << "," << r.degree << ",";
            if (r.weight)
                os << *r.weight;
            os << "," << r.dimension << "\n";
        }
        // metadata as trailing comments keeps the CSV machine-diffable
        for (const auto& [k, v] : metadata)
            os << "# " << k << ": " << v << "\n";
        return os.str();
    }
};

}  // namespace qchain
