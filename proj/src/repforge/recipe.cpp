#include "stabforge/repforge/recipe.hpp"

#include <memory>
#include <sstream>

#include "stabforge/errors.hpp"
#include "stabforge/repforge/constructions.hpp"

namespace stabforge::repforge {

namespace {

enum class Kind { Natural, Adjoint, Spin, HalfSpin, Highest, Sym, Wedge, Tensor, Dual, Twist, TraceZero, ModScalars, Head };

struct Node {
    Kind kind;
    long n = 0;
    IntVec labels;
    std::vector<std::unique_ptr<Node>> kids;
};

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ':')) toks_.push_back(tok);
        if (text.empty() || text.back() == ':') toks_.push_back("");
    }

    std::unique_ptr<Node> parse() {
        auto n = recipe();
        if (pos_ != toks_.size()) fail("trailing input");
        return n;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("recipe '" + text_ + "': " + why);
    }
    const std::string& next(const char* what) {
        if (pos_ >= toks_.size()) fail(std::string("expected ") + what);
        return toks_[pos_++];
    }
    long integer(const char* what) {
        const std::string& t = next(what);
        try {
            std::size_t used = 0;
            long v = std::stol(t, &used);
            if (used != t.size() || v < 0) fail(std::string("bad ") + what + " '" + t + "'");
            return v;
        } catch (const std::logic_error&) {
            fail(std::string("bad ") + what + " '" + t + "'");
        }
    }
    std::unique_ptr<Node> make(Kind k) {
        auto n = std::make_unique<Node>();
        n->kind = k;
        return n;
    }
    std::unique_ptr<Node> recipe() {
        const std::string tok = next("a recipe");
        if (tok == "natural") return make(Kind::Natural);
        if (tok == "adjoint") return make(Kind::Adjoint);
        if (tok == "spin") return make(Kind::Spin);
        if (tok == "halfspin") {
            auto n = make(Kind::HalfSpin);
            const std::string& s = next("chirality");
            if (s != "+" && s != "-") fail("chirality must be + or -");
            n->n = s == "+" ? 1 : -1;
            return n;
        }
        if (tok == "highest") {
            auto n = make(Kind::Highest);
            std::stringstream ss(next("weight"));
            std::string c;
            while (std::getline(ss, c, ',')) {
                try {
                    std::size_t used = 0;
                    n->labels.push_back(std::stol(c, &used));
                    if (used != c.size()) fail("bad weight coordinate '" + c + "'");
                } catch (const std::logic_error&) {
                    fail("bad weight coordinate '" + c + "'");
                }
            }
            if (n->labels.empty()) fail("empty weight");
            return n;
        }
        if (tok == "sym" || tok == "wedge" || tok == "twist") {
            auto n = make(tok == "sym" ? Kind::Sym : tok == "wedge" ? Kind::Wedge : Kind::Twist);
            n->n = integer(tok == "twist" ? "twist exponent" : "degree");
            n->kids.push_back(recipe());
            return n;
        }
        if (tok == "tensor") {
            auto n = make(Kind::Tensor);
            n->kids.push_back(recipe());
            n->kids.push_back(recipe());
            return n;
        }
        if (tok == "dual" || tok == "tracezero" || tok == "modscalars") {
            auto n = make(tok == "dual" ? Kind::Dual : tok == "tracezero" ? Kind::TraceZero : Kind::ModScalars);
            n->kids.push_back(recipe());
            return n;
        }
        if (tok == "head") {
            auto n = make(Kind::Head);
            if (pos_ < toks_.size()) n->kids.push_back(recipe());
            return n;
        }
        fail("unknown constructor '" + tok + "'");
    }

    std::string text_;
    std::vector<std::string> toks_;
    std::size_t pos_ = 0;
};

bool needs_prime_field(const Node& n) {
    if (n.kind == Kind::Twist || n.kind == Kind::Head || n.kind == Kind::ModScalars) return true;
    for (const auto& k : n.kids)
        if (needs_prime_field(*k)) return true;
    return false;
}

struct Evaluator {
    std::string type;
    char label;
    int rank;
    std::optional<IntVec> context;

    Representation leaf(const Node& n, const Field& field) {
        auto alg = algebra_for(type);
        switch (n.kind) {
            case Kind::Natural: {
                if (std::string("ABCD").find(label) != std::string::npos) return natural_rep(label, rank, field);
                // Exceptional types: the smallest nontrivial module.
                IntVec hw(rank, 0);
                if (label == 'E' && rank == 8) return adjoint_rep(alg, field);
                hw[(label == 'G' || (label == 'E' && rank == 6)) ? 0 : rank - 1] = 1;
                return weyl_module(alg, hw, field);
            }
            case Kind::Adjoint: return adjoint_rep(alg, field);
            case Kind::Spin:
                if (label != 'B') throw InvalidType("spin is the recipe for type B; use halfspin for type D");
                return half_spin_rep(label, rank, field);
            case Kind::HalfSpin:
                if (label != 'D') throw InvalidType("halfspin needs type D");
                return half_spin_rep(label, rank, field, static_cast<int>(n.n));
            case Kind::Highest:
                if (n.labels.size() != static_cast<std::size_t>(rank))
                    throw DimensionMismatch("highest weight needs " + std::to_string(rank) + " coordinates");
                return weyl_module(alg, n.labels, field);
            default: throw Error("not a leaf");
        }
    }

    IntVec highest_of(const Node& n) {
        if (n.kind == Kind::Highest) return n.labels;
        Representation r = eval(n, Field::rationals());
        return r.highest ? *r.highest : highest_weight_of(r);
    }

    Representation eval(const Node& n, const Field& field) {
        if (field.is_finite() && !needs_prime_field(n)) return change_field(eval(n, Field::rationals()), field);
        switch (n.kind) {
            case Kind::Natural:
            case Kind::Adjoint:
            case Kind::Spin:
            case Kind::HalfSpin:
            case Kind::Highest: return leaf(n, field);
            case Kind::Sym: return sym_power(eval(*n.kids[0], field), static_cast<unsigned>(n.n));
            case Kind::Wedge: return wedge_power(eval(*n.kids[0], field), static_cast<unsigned>(n.n));
            case Kind::Tensor: return tensor(eval(*n.kids[0], field), eval(*n.kids[1], field));
            case Kind::Dual: return dual(eval(*n.kids[0], field));
            case Kind::Twist: return frobenius_twist(eval(*n.kids[0], field), static_cast<unsigned>(n.n));
            case Kind::TraceZero: return trace_zero(eval(*n.kids[0], field));
            case Kind::ModScalars: return mod_scalars(eval(*n.kids[0], field));
            case Kind::Head: {
                IntVec hw;
                if (!n.kids.empty()) {
                    hw = highest_of(*n.kids[0]);
                } else {
                    if (!context) throw ParseError("bare 'head' needs a highest weight from the caller");
                    hw = *context;
                }
                return irreducible_head(weyl_module(algebra_for(type), hw, field));
            }
        }
        throw Error("unreachable recipe node");
    }
};

}  // namespace

void validate_recipe(const std::string& recipe) { Parser(recipe).parse(); }

Representation build_recipe(const std::string& type, const std::string& recipe, const Field& field,
                            std::optional<IntVec> context) {
    auto tree = Parser(recipe).parse();
    auto [label, rank] = rootsys::parse_type(type);
    Evaluator ev{rootsys::build_root_system(label, rank).name(), label, rank, context};
    Representation rep = ev.eval(*tree, field);
    rep.recipe = recipe;
    return rep;
}

}  // namespace stabforge::repforge
