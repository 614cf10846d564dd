#include "stabforge/repforge/representation.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "stabforge/errors.hpp"

namespace stabforge::repforge {

namespace {

SparseMatrix to_field(const SparseMatrix& m, const Field& field) {
    if (m.field() == field) return m;
    if (!m.field().is_finite()) return m.reduced(field);
    if (field.contains(m.field())) return m.embedded(field);
    throw FieldMismatch(m.field().name() + " does not map into " + field.name());
}

SparseMatrix selection(const std::vector<std::size_t>& section, std::size_t model_dim, const Field& field) {
    SparseMatrix s(model_dim, section.size(), field);
    for (std::size_t i = 0; i < section.size(); ++i) s.set(section[i], i, field.from_int(1));
    return s;
}

void require_integral(const SparseMatrix& m, const std::string& what) {
    if (!m.is_integral()) throw IntegralityFailure(what + " is not integral on the lattice");
}

}  // namespace

SparseMatrix IntegralModel::induced(const SparseMatrix& y, const Field& field) const {
    if (!projection) return to_field(y, field);
    SparseMatrix p = to_field(*projection, field);
    return p * to_field(y, field) * selection(section, dim, field);
}

PolyMatrix IntegralModel::induced(const PolyMatrix& y, const Field& field) const {
    std::vector<SparseMatrix> out;
    for (const auto& c : y.coeffs()) out.push_back(induced(c, field));
    return PolyMatrix(std::move(out));
}

std::vector<SparseMatrix> Representation::lie_generators() const {
    std::vector<SparseMatrix> out(e);
    out.insert(out.end(), f.begin(), f.end());
    out.insert(out.end(), h.begin(), h.end());
    return out;
}

std::vector<PolyMatrix> Representation::curves() const {
    std::vector<PolyMatrix> out(x_pos);
    out.insert(out.end(), x_neg.begin(), x_neg.end());
    return out;
}

Representation change_field(const Representation& rep, const Field& field) {
    if (rep.field == field) return rep;
    Representation out = rep;
    out.field = field;
    for (auto* v : {&out.e, &out.f, &out.h})
        for (auto& m : *v) m = to_field(m, field);
    for (auto* v : {&out.x_pos, &out.x_neg})
        for (auto& c : *v) c = c.reduced(field);
    return out;
}

std::vector<SparseMatrix> chevalley_action(const Representation& rep, const chevalley::ChevalleyAlgebra& alg) {
    if (alg.rank() != rep.rank()) throw DimensionMismatch("algebra rank differs from representation rank");
    if (rep.model) {
        if (rep.model->action.size() != static_cast<std::size_t>(alg.dim()))
            throw DimensionMismatch("model built for a different algebra");
        std::vector<SparseMatrix> out;
        for (const auto& y : rep.model->action) out.push_back(rep.model->induced(y, rep.field));
        return out;
    }
    const auto& d = alg.datum();
    const Field& k = rep.field;
    int np = alg.n_positive();
    std::vector<SparseMatrix> out(alg.dim());
    for (int i = 0; i < rep.rank(); ++i) {
        out[alg.e_simple(i)] = rep.e[i];
        out[alg.f_simple(i)] = rep.f[i];
        out[alg.cartan_basis(i)] = rep.h[i];
    }
    for (int r = rep.rank(); r < np; ++r) {
        const IntVec& beta = d.positive_roots[r];
        for (int i = 0; i < rep.rank(); ++i) {
            IntVec gamma = beta;
            --gamma[i];
            int g = d.root_index(gamma);
            if (g < 0) continue;
            for (int sign : {1, -1}) {
                int a = sign > 0 ? i : np + i, b = sign > 0 ? g : np + g, target = sign > 0 ? r : np + r;
                long n = alg.structure_constant(a, b);
                Scalar nk = k.image(Scalar(n));
                if (k.is_zero(nk))
                    throw IntegralityFailure("structure constant " + std::to_string(n) + " vanishes in " + k.name() +
                                             "; an integral model is needed");
                SparseMatrix br = out[alg.root_basis(a)].commutator(out[alg.root_basis(b)]);
                out[alg.root_basis(target)] = br.scaled(k.inv(nk));
            }
            break;
        }
    }
    return out;
}

void attach_model(Representation& rep, std::shared_ptr<const chevalley::ChevalleyAlgebra> alg) {
    if (rep.field.is_finite()) throw FieldMismatch("integral models are built over Q");
    auto model = std::make_shared<IntegralModel>();
    model->alg = alg;
    model->dim = rep.dim;
    model->weights = rep.weights;
    Representation bare = rep;
    bare.model.reset();
    model->action = chevalley_action(bare, *alg);
    for (std::size_t b = 0; b < model->action.size(); ++b) require_integral(model->action[b], alg->basis_label(b));
    for (std::size_t i = 0; i < rep.dim; ++i) model->section.push_back(i);
    rep.model = model;
}

void attach_curves(Representation& rep) {
    rep.x_pos.clear();
    rep.x_neg.clear();
    auto curve = [&](const SparseMatrix& qx) {
        PolyMatrix x = exp_nilpotent(qx);
        for (const auto& c : x.coeffs()) require_integral(c, "divided power");
        return x;
    };
    if (rep.model && rep.field.is_finite()) {
        const auto& alg = *rep.model->alg;
        for (int i = 0; i < rep.rank(); ++i) {
            rep.x_pos.push_back(rep.model->induced(curve(rep.model->action[alg.e_simple(i)]), rep.field));
            rep.x_neg.push_back(rep.model->induced(curve(rep.model->action[alg.f_simple(i)]), rep.field));
        }
        return;
    }
    if (rep.field.is_finite()) throw FieldMismatch("curves in prime characteristic need an integral model");
    for (int i = 0; i < rep.rank(); ++i) {
        rep.x_pos.push_back(curve(rep.e[i]));
        rep.x_neg.push_back(curve(rep.f[i]));
    }
}

std::vector<IntVec> weights_from_h(const std::vector<SparseMatrix>& h) {
    if (h.empty()) return {};
    std::size_t n = h[0].nrows();
    std::vector<IntVec> w(n, IntVec(h.size(), 0));
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!h[i].is_diagonal()) throw Error("h_" + std::to_string(i + 1) + " is not diagonal");
        for (std::size_t j = 0; j < n; ++j) {
            Scalar v = h[i].get(j, j);
            if (v.get_den() != 1) throw IntegralityFailure("non-integral weight");
            w[j][i] = v.get_num().get_si();
        }
    }
    return w;
}

bool serre_relations_hold(const Representation& rep) {
    const Field& k = rep.field;
    int l = rep.rank();
    for (int i = 0; i < l; ++i) {
        if (!rep.h[i].is_diagonal()) return false;
        for (int j = 0; j < l; ++j) {
            SparseMatrix ef = rep.e[i].commutator(rep.f[j]);
            if (i == j ? ef != rep.h[i] : !ef.is_zero()) return false;
            Scalar a = k.from_int(rep.cartan[i][j]);
            if (rep.h[i].commutator(rep.e[j]) != rep.e[j].scaled(a)) return false;
            if (rep.h[i].commutator(rep.f[j]) != rep.f[j].scaled(k.neg(a))) return false;
            if (!rep.h[i].commutator(rep.h[j]).is_zero()) return false;
            if (i == j) continue;
            SparseMatrix xe = rep.e[j], xf = rep.f[j];
            for (long s = 0; s < 1 - rep.cartan[i][j]; ++s) {
                xe = rep.e[i].commutator(xe);
                xf = rep.f[i].commutator(xf);
            }
            if (!xe.is_zero() || !xf.is_zero()) return false;
        }
        // Weights agree with the h diagonal whenever they are recorded.
        if (rep.weights.size() == rep.dim)
            for (std::size_t v = 0; v < rep.dim; ++v)
                if (rep.h[i].get(v, v) != k.from_int(rep.weights[v][i])) return false;
    }
    return true;
}

bool curves_consistent(const Representation& rep) {
    auto id = SparseMatrix::identity(rep.dim, rep.field);
    auto gens = rep.lie_generators();
    auto cs = rep.curves();
    if (cs.size() != 2 * static_cast<std::size_t>(rep.rank())) return false;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (cs[i].coeff(0) != id) return false;
        SparseMatrix d1 = cs[i].degree() >= 1 ? cs[i].coeff(1) : SparseMatrix(rep.dim, rep.dim, rep.field);
        if (d1 != gens[i]) return false;
    }
    return true;
}

namespace {

using nlohmann::json;

json triples_json(const SparseMatrix& m) {
    json out = json::array();
    for (const auto& t : m.triples()) out.push_back({t.row, t.col, exactla::format_scalar(t.value)});
    return out;
}

SparseMatrix matrix_json(const json& j, std::size_t n, const Field& k) {
    SparseMatrix m(n, n, k);
    for (const auto& t : j) {
        std::size_t r = t.at(0), c = t.at(1);
        if (r >= n || c >= n) throw ParseError("generator entry out of range");
        Scalar v = exactla::parse_scalar(t.at(2).get<std::string>());
        m.set(r, c, v);
    }
    return m;
}

}  // namespace

std::string to_json(const Representation& rep) {
    json j;
    j["type"] = rep.group;
    j["rank"] = rep.rank();
    j["cartan"] = rep.cartan;
    j["field"] = rep.field.name();
    j["dim"] = rep.dim;
    j["lattice"] = rep.lattice;
    j["recipe"] = rep.recipe;
    if (rep.highest) j["highest"] = *rep.highest;
    json gens;
    for (const auto& [name, v] : {std::pair{"e", &rep.e}, {"f", &rep.f}, {"h", &rep.h}}) {
        json arr = json::array();
        for (const auto& m : *v) arr.push_back(triples_json(m));
        gens[name] = arr;
    }
    for (const auto& [name, v] : {std::pair{"x_pos", &rep.x_pos}, {"x_neg", &rep.x_neg}}) {
        json arr = json::array();
        for (const auto& c : *v) {
            json coeffs = json::array();
            for (const auto& m : c.coeffs()) coeffs.push_back(triples_json(m));
            arr.push_back(coeffs);
        }
        gens[name] = arr;
    }
    j["generators"] = gens;
    j["weights"] = rep.weights;
    return j.dump();
}

Representation rep_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& ex) {
        throw ParseError(ex.what());
    }
    try {
        Representation rep;
        rep.group = j.at("type");
        rep.cartan = j.at("cartan").get<IntMatrix>();
        if (j.at("rank").get<int>() != rep.rank()) throw ParseError("rank disagrees with the Cartan matrix");
        rep.field = Field::parse(j.at("field"));
        rep.dim = j.at("dim");
        rep.lattice = j.value("lattice", true);
        rep.recipe = j.value("recipe", std::string());
        if (j.contains("highest")) rep.highest = j["highest"].get<IntVec>();
        const json& g = j.at("generators");
        for (const auto& [name, v] : {std::pair{"e", &rep.e}, {"f", &rep.f}, {"h", &rep.h}})
            for (const auto& m : g.at(name)) v->push_back(matrix_json(m, rep.dim, rep.field));
        for (const auto& [name, v] : {std::pair{"x_pos", &rep.x_pos}, {"x_neg", &rep.x_neg}}) {
            if (!g.contains(name)) continue;
            for (const auto& c : g.at(name)) {
                std::vector<SparseMatrix> coeffs;
                for (const auto& m : c) coeffs.push_back(matrix_json(m, rep.dim, rep.field));
                v->emplace_back(std::move(coeffs));
            }
        }
        rep.weights = j.at("weights").get<std::vector<IntVec>>();
        if (rep.e.size() != rep.cartan.size() || rep.f.size() != rep.e.size() || rep.h.size() != rep.e.size())
            throw ParseError("one e, f, h per simple root");
        return rep;
    } catch (const json::exception& ex) {
        throw ParseError(ex.what());
    }
}

void save_rep(const Representation& rep, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << to_json(rep) << '\n';
}

Representation load_rep(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return rep_from_json(ss.str());
}

}  // namespace stabforge::repforge
