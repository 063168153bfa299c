#include "semicrit/serialize.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "semicrit/clebsch.hpp"

namespace semicrit {

namespace {

void skip_ws(const std::string& s, size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

// split on top-level '+' and '-' (sign attached to the term)
std::vector<std::pair<int, std::string>> split_terms(const std::string& s) {
    std::vector<std::pair<int, std::string>> out;
    int depth = 0;
    int sign = 1;
    std::string cur;
    auto flush = [&]() {
        size_t a = cur.find_first_not_of(" \t");
        if (a == std::string::npos) {
            cur.clear();
            return;
        }
        size_t b = cur.find_last_not_of(" \t");
        out.push_back({sign, cur.substr(a, b - a + 1)});
        cur.clear();
    };
    for (size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (depth == 0 && (c == '+' || c == '-')) {
            // '-' inside an exponent like a^-2 or t^-1 stays with the token
            if (i > 0 && (s[i - 1] == '^' || s[i - 1] == 'e' || s[i - 1] == 'E') &&
                c == '-') {
                cur += c;
                continue;
            }
            if (cur.find_first_not_of(" \t") != std::string::npos) flush();
            sign = (c == '-') ? -1 : 1;
            if (out.empty() && cur.empty() && c == '-' && i == 0) sign = -1;
            continue;
        }
        cur += c;
    }
    flush();
    return out;
}

Rational parse_rational_token(const std::string& t) {
    // "3", "3/2"
    return Rational(t);
}

// one product term of a polynomial: "3/2*a^2", "a", "5"
PolyA parse_poly_term(const std::string& term) {
    Rational coeff(1);
    int exp = 0;
    bool saw_factor = false;
    std::string buf;
    for (size_t i = 0; i <= term.size(); ++i) {
        if (i == term.size() || term[i] == '*') {
            std::string f = buf;
            buf.clear();
            size_t a = f.find_first_not_of(" \t");
            if (a == std::string::npos) continue;
            size_t b = f.find_last_not_of(" \t");
            f = f.substr(a, b - a + 1);
            if (f.empty()) continue;
            saw_factor = true;
            if (f[0] == 'a') {
                if (f == "a") exp += 1;
                else if (f.size() > 2 && f[1] == '^') exp += std::stoi(f.substr(2));
                else throw std::invalid_argument("parse_poly: bad factor '" + f + "'");
            } else {
                coeff *= parse_rational_token(f);
            }
        } else {
            buf += term[i];
        }
    }
    if (!saw_factor) throw std::invalid_argument("parse_poly: empty term");
    return PolyA::monomial(coeff, exp);
}

HalfInt parse_halfint(const std::string& t) {
    const size_t slash = t.find('/');
    if (slash == std::string::npos) return HalfInt::whole(std::stoi(t));
    const int num = std::stoi(t.substr(0, slash));
    const int den = std::stoi(t.substr(slash + 1));
    if (den != 2 || num % 2 == 0)
        throw std::invalid_argument("parse_halfint: '" + t + "'");
    return HalfInt::of(num);
}

}  // namespace

PolyA parse_poly(const std::string& text) {
    PolyA p;
    for (const auto& [sign, term] : split_terms(text)) {
        PolyA t = parse_poly_term(term);
        p += (sign < 0) ? -t : t;
    }
    return p;
}

namespace {

// basis factor of a ring element: z[m], w[m], t^i*s^j, t^i, s^j, or a scalar
struct RingTerm {
    PolyA coeff = PolyA(1);
    RingElt basis = RingElt::one();
};

RingTerm parse_ring_term(const std::string& term) {
    RingTerm out;
    std::string buf;
    auto handle = [&](std::string f) {
        size_t a = f.find_first_not_of(" \t");
        if (a == std::string::npos) return;
        size_t b = f.find_last_not_of(" \t");
        f = f.substr(a, b - a + 1);
        if (f.empty()) return;
        if (f[0] == '(') {
            if (f.back() != ')') throw std::invalid_argument("unbalanced coefficient parens");
            out.coeff *= parse_poly(f.substr(1, f.size() - 2));
        } else if (f[0] == 'z' || f[0] == 'w') {
            const size_t lb = f.find('['), rb = f.find(']');
            if (lb == std::string::npos || rb == std::string::npos)
                throw std::invalid_argument("expected z[m] or w[m] in '" + f + "'");
            HalfInt m = parse_halfint(f.substr(lb + 1, rb - lb - 1));
            out.basis = ring_mul(out.basis, f[0] == 'z' ? RingElt::z(m) : w_basis(m));
        } else if (f[0] == 't' || f[0] == 's') {
            int e = 1;
            if (f.size() > 1) {
                if (f[1] != '^') throw std::invalid_argument("bad monomial '" + f + "'");
                e = std::stoi(f.substr(2));
            }
            out.basis = ring_mul(out.basis, f[0] == 't' ? from_ts_monomial(e, 0)
                                                        : from_ts_monomial(0, e));
        } else if (f[0] == 'a') {
            out.coeff *= parse_poly(f);
        } else {
            out.coeff *= PolyA(parse_rational_token(f));
        }
    };
    int depth = 0;
    for (size_t i = 0; i <= term.size(); ++i) {
        if (i == term.size() || (term[i] == '*' && depth == 0)) {
            handle(buf);
            buf.clear();
        } else {
            if (term[i] == '(') ++depth;
            if (term[i] == ')') --depth;
            buf += term[i];
        }
    }
    return out;
}

}  // namespace

RingElt parse_ring_elt(const std::string& text) {
    RingElt out;
    for (const auto& [sign, term] : split_terms(text)) {
        RingTerm t = parse_ring_term(term);
        PolyA c = (sign < 0) ? -t.coeff : t.coeff;
        out += t.basis.scaled(c);
    }
    return out;
}

LaurentElt parse_laurent_elt(const std::string& text) {
    LaurentElt out;
    for (const auto& [sign, term] : split_terms(text)) {
        Rational coeff(sign);
        int exp = 0;
        std::string buf;
        auto handle = [&](std::string f) {
            size_t a = f.find_first_not_of(" \t");
            if (a == std::string::npos) return;
            size_t b = f.find_last_not_of(" \t");
            f = f.substr(a, b - a + 1);
            if (f.empty()) return;
            if (f[0] == 't') {
                if (f == "t") exp += 1;
                else if (f.size() > 2 && f[1] == '^') exp += std::stoi(f.substr(2));
                else throw std::invalid_argument("parse_laurent: bad factor '" + f + "'");
            } else {
                coeff *= parse_rational_token(f);
            }
        };
        for (size_t i = 0; i <= term.size(); ++i) {
            if (i == term.size() || term[i] == '*') {
                handle(buf);
                buf.clear();
            } else {
                buf += term[i];
            }
        }
        out.add_term(exp, coeff);
    }
    return out;
}

std::string to_string(const RingElt& x) {
    if (x.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : x.terms()) {
        if (!out.empty()) out += " + ";
        if (c.is_one()) {
            out += "z[" + m.str() + "]";
        } else {
            out += "(" + c.str() + ")*z[" + m.str() + "]";
        }
    }
    return out;
}

std::string to_string(const LaurentElt& x) {
    if (x.is_zero()) return "0";
    std::string out;
    for (const auto& [k, c] : x.terms()) {
        if (!out.empty()) out += " + ";
        if (!c.is_one()) out += c.str() + "*";
        out += "t^" + std::to_string(k);
    }
    return out;
}

std::string to_string(const Monomial& m, const ModuleId& id) {
    std::string out;
    for (const auto& b : m.bosons)
        out += std::string(kind_token(b.kind)) + "[" + b.mode.str() + "] ";
    for (const auto& p : m.psi) out += "ps[" + p.str() + "] ";
    for (const auto& p : m.psistar) out += "ps*[" + p.str() + "] ";
    out += "| v[" + std::to_string(m.gj);
    if (id.family != Family::OnePointV) out += "," + std::to_string(m.gk);
    out += "]";
    return out;
}

std::string to_string(const Vector& v) {
    if (v.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : v.terms()) {
        if (!out.empty()) out += "  +  ";
        out += "(" + c.str() + ") * " + to_string(m, v.module());
    }
    return out;
}

Vector parse_vector(const std::string& text, const ModuleId& id) {
    Vector out(id);
    std::shared_ptr<ClebschGordan> cg;
    for (const auto& [sign, term] : split_terms(text)) {
        // coefficient * ops... | ground
        const size_t bar = term.find('|');
        if (bar == std::string::npos)
            throw std::invalid_argument("parse_vector: missing '| ground' in '" + term + "'");
        std::string left = term.substr(0, bar);
        std::string ground = term.substr(bar + 1);
        size_t a = ground.find_first_not_of(" \t");
        size_t b = ground.find_last_not_of(" \t");
        if (a == std::string::npos) throw std::invalid_argument("parse_vector: empty ground");
        ground = ground.substr(a, b - a + 1);

        // leading coefficient: everything before the last '*' that precedes the
        // first generator token; simpler: optional "(...)*" or "poly *" prefix
        PolyA coeff(Rational(sign));
        std::vector<Op> ops;
        std::string buf;
        auto flush_token = [&](std::string f) {
            size_t x = f.find_first_not_of(" \t");
            if (x == std::string::npos) return;
            size_t y = f.find_last_not_of(" \t");
            f = f.substr(x, y - x + 1);
            if (f.empty()) return;
            const size_t lb = f.find('[');
            if (lb != std::string::npos &&
                (f.rfind("e[", 0) == 0 || f.rfind("h[", 0) == 0 || f.rfind("f[", 0) == 0 ||
                 f.rfind("ps[", 0) == 0 || f.rfind("ps*[", 0) == 0)) {
                const size_t rb = f.find(']');
                HalfInt m = parse_halfint(f.substr(lb + 1, rb - lb - 1));
                if (!id.two_point() && !m.is_integer())
                    throw std::invalid_argument("parse_vector: half-odd mode in one-point module");
                GenKind k;
                if (f[0] == 'e') k = GenKind::E;
                else if (f[0] == 'h') k = GenKind::H;
                else if (f[0] == 'f') k = GenKind::F;
                else if (f.rfind("ps*", 0) == 0) k = GenKind::PsiStar;
                else k = GenKind::Psi;
                ops.push_back({k, m});
            } else if (f[0] == '(') {
                if (f.back() != ')') throw std::invalid_argument("parse_vector: parens");
                coeff *= parse_poly(f.substr(1, f.size() - 2));
            } else {
                coeff *= parse_poly(f);
            }
        };
        // tokens separated by whitespace; '*' is a separator except in "ps*"
        int depth = 0;
        for (size_t i = 0; i <= left.size(); ++i) {
            const bool end = (i == left.size());
            const char c = end ? ' ' : left[i];
            if (!end && (c == '(' || c == '[')) ++depth;
            if (!end && (c == ')' || c == ']')) --depth;
            const bool star_sep = (c == '*' && depth == 0 && buf != "ps");
            if (end || ((std::isspace(static_cast<unsigned char>(c)) && depth == 0) || star_sep)) {
                flush_token(buf);
                buf.clear();
            } else {
                buf += c;
            }
        }

        // ground token
        Vector base(id);
        if (ground[0] == 'v') {
            const size_t lb = ground.find('['), rb = ground.find(']');
            if (lb == std::string::npos || rb == std::string::npos)
                throw std::invalid_argument("parse_vector: ground '" + ground + "'");
            std::string inner = ground.substr(lb + 1, rb - lb - 1);
            Monomial g;
            const size_t comma = inner.find(',');
            if (comma == std::string::npos) {
                g.gj = std::stoi(inner);
            } else {
                g.gj = std::stoi(inner.substr(0, comma));
                g.gk = std::stoi(inner.substr(comma + 1));
            }
            base = Vector::single(id, g, PolyA(1));
        } else if (ground[0] == 'u') {
            const int i_sum = std::stoi(ground.substr(1));
            if (!cg) cg = std::make_shared<ClebschGordan>(id.lambda, id.mu);
            const QVector& u = cg->highest(i_sum);
            for (int r = 0; r < cg->dim(); ++r) {
                if (u(r).is_zero()) continue;
                Monomial g;
                g.gj = r / (id.mu + 1);
                g.gk = r % (id.mu + 1);
                base.add_term(g, PolyA(u(r)));
            }
        } else {
            throw std::invalid_argument("parse_vector: unknown ground '" + ground + "'");
        }

        for (auto it = ops.rbegin(); it != ops.rend(); ++it)
            base = apply_mode(it->kind, it->mode, base);
        out += base.scaled(coeff);
    }
    return out;
}

Json vector_to_json(const Vector& v) {
    Json arr = Json::array();
    for (const auto& [m, c] : v.terms()) {
        Json rec;
        rec["monomial"] = to_string(m, v.module());
        rec["coeff"] = c.str();
        arr.push_back(rec);
    }
    return arr;
}

namespace {

Json astructure_to_json(const AStructure& st) {
    Json j;
    j["dim"] = st.dim;
    j["free_rank"] = st.free_rank;
    j["torsion"] = st.torsion;
    return j;
}

}  // namespace

Json hreport_to_json(const HReport& rep) {
    Json j;
    j["schema"] = "semicrit/1";
    j["module"] = rep.id.str();
    j["params"] = {{"charge_lo", rep.params.charge_lo},
                   {"charge_hi", rep.params.charge_hi},
                   {"energy", rep.params.energy_bound},
                   {"apow", rep.params.apow_bound},
                   {"filter", rep.params.filter == SliceFilter::Full
                                  ? "full"
                                  : (rep.params.filter == SliceFilter::D ? "D" : "E")},
                   {"tilde", rep.params.tilde}};
    Json cells = Json::array();
    Json charges = Json::array();
    for (const auto& cs : rep.charges) {
        Json c;
        c["charge"] = cs.charge;
        c["h"] = astructure_to_json(cs.h);
        charges.push_back(c);
        for (const auto& cell : cs.cells) {
            Json jc = astructure_to_json(cell.h);
            jc["charge"] = cell.charge;
            jc["energy"] = cell.level;
            jc["apow"] = rep.params.apow_bound;
            jc["stable"] = cell.stable;
            cells.push_back(jc);
        }
    }
    j["charges"] = charges;
    j["cells"] = cells;
    return j;
}

Json qcells_to_json(const std::vector<QCell>& cells) {
    Json arr = Json::array();
    for (const auto& qc : cells) {
        Json j;
        j["q2"] = qc.qdeg2;
        j["energy"] = qc.level;
        j["dim"] = qc.dim;
        j["stable"] = qc.stable;
        arr.push_back(j);
    }
    return arr;
}

}  // namespace semicrit
