#include "grasscoh/graded_poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace grasscoh {

namespace {

std::vector<int> weights_of(const std::vector<GeneratorSpec>& gens) {
    std::vector<int> w;
    w.reserve(gens.size());
    for (const auto& g : gens) {
        w.push_back(g.degree);
    }
    return w;
}

Monomial one_of(std::size_t n) { return Monomial{std::vector<int>(n, 0)}; }

Monomial times(const Monomial& a, const Monomial& b) {
    Monomial m = a;
    for (std::size_t i = 0; i < m.exponents.size(); ++i) {
        m.exponents[i] += b.exponents[i];
    }
    return m;
}

}  // namespace

Generators make_generators(std::vector<GeneratorSpec> specs) {
    std::set<std::string> names;
    for (const auto& g : specs) {
        if (g.degree < 2 || g.degree % 2 != 0) {
            throw std::invalid_argument("generator '" + g.name + "' must have even degree >= 2");
        }
        if (g.name.empty() || !names.insert(g.name).second) {
            throw std::invalid_argument("generator names must be nonempty and unique: '" + g.name + "'");
        }
    }
    return std::make_shared<const std::vector<GeneratorSpec>>(std::move(specs));
}

bool same_generators(const Generators& a, const Generators& b) {
    return a == b || (a && b && *a == *b);
}

std::size_t generator_index(const Generators& gens, const std::string& name) {
    for (std::size_t i = 0; i < gens->size(); ++i) {
        if ((*gens)[i].name == name) {
            return i;
        }
    }
    throw std::invalid_argument("unknown generator '" + name + "'");
}

bool Monomial::is_one() const {
    return std::all_of(exponents.begin(), exponents.end(), [](int e) { return e == 0; });
}

int degree(const Monomial& m, const std::vector<GeneratorSpec>& gens) {
    int d = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        d += m.exponents[i] * gens[i].degree;
    }
    return d;
}

bool GradedLexGreater::operator()(const Monomial& a, const Monomial& b) const {
    int da = 0;
    int db = 0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        da += a.exponents[i] * weights_[i];
        db += b.exponents[i] * weights_[i];
    }
    if (da != db) {
        return da > db;
    }
    return a.exponents > b.exponents;
}

GradedPolynomial::GradedPolynomial(Generators gens)
    : gens_(std::move(gens)), terms_(GradedLexGreater(weights_of(*gens_))) {}

GradedPolynomial GradedPolynomial::constant(Generators gens, const Integer& c) {
    GradedPolynomial p(std::move(gens));
    p.add_term(one_of(p.gens_->size()), c);
    return p;
}

GradedPolynomial GradedPolynomial::variable(Generators gens, const std::string& name) {
    const std::size_t idx = generator_index(gens, name);
    Monomial m = one_of(gens->size());
    m.exponents[idx] = 1;
    return term(std::move(gens), std::move(m), 1);
}

GradedPolynomial GradedPolynomial::term(Generators gens, Monomial m, const Integer& c) {
    if (m.exponents.size() != gens->size()) {
        throw std::invalid_argument("monomial length does not match generator list");
    }
    GradedPolynomial p(std::move(gens));
    p.add_term(m, c);
    return p;
}

bool GradedPolynomial::is_homogeneous() const { return is_zero() || homogeneous_degree().has_value(); }

std::optional<int> GradedPolynomial::homogeneous_degree() const {
    if (terms_.empty()) {
        return std::nullopt;
    }
    const int d = degree(terms_.begin()->first, *gens_);
    for (const auto& [m, c] : terms_) {
        if (degree(m, *gens_) != d) {
            return std::nullopt;
        }
    }
    return d;
}

int GradedPolynomial::max_degree() const {
    // terms are sorted by degree first
    return terms_.empty() ? 0 : degree(terms_.begin()->first, *gens_);
}

Integer GradedPolynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Integer(0) : it->second;
}

void GradedPolynomial::add_term(const Monomial& m, const Integer& c) {
    if (c == 0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

void GradedPolynomial::check_compatible(const GradedPolynomial& rhs) const {
    if (!same_generators(gens_, rhs.gens_)) {
        throw std::invalid_argument("polynomials over different generator lists");
    }
}

GradedPolynomial& GradedPolynomial::operator+=(const GradedPolynomial& rhs) {
    check_compatible(rhs);
    for (const auto& [m, c] : rhs.terms_) {
        add_term(m, c);
    }
    return *this;
}

GradedPolynomial& GradedPolynomial::operator-=(const GradedPolynomial& rhs) {
    check_compatible(rhs);
    for (const auto& [m, c] : rhs.terms_) {
        add_term(m, -c);
    }
    return *this;
}

GradedPolynomial& GradedPolynomial::operator*=(const Integer& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) {
        v *= c;
    }
    return *this;
}

GradedPolynomial GradedPolynomial::operator-() const {
    GradedPolynomial n = *this;
    return n *= -1;
}

bool GradedPolynomial::operator==(const GradedPolynomial& rhs) const {
    return same_generators(gens_, rhs.gens_) && terms_ == rhs.terms_;
}

GradedPolynomial multiply(const GradedPolynomial& p, const GradedPolynomial& q) {
    if (!same_generators(p.generators(), q.generators())) {
        throw std::invalid_argument("multiply: polynomials over different generator lists");
    }
    GradedPolynomial out(p.generators());
    for (const auto& [a, ca] : p.terms()) {
        for (const auto& [b, cb] : q.terms()) {
            out.add_term(times(a, b), ca * cb);
        }
    }
    return out;
}

GradedPolynomial operator*(const GradedPolynomial& p, const GradedPolynomial& q) { return multiply(p, q); }

GradedPolynomial power(const GradedPolynomial& p, unsigned k) {
    GradedPolynomial out = GradedPolynomial::constant(p.generators(), 1);
    for (unsigned i = 0; i < k; ++i) {
        out = multiply(out, p);
    }
    return out;
}

GradedPolynomial partial_derivative(const GradedPolynomial& p, const std::string& generator) {
    const std::size_t idx = generator_index(p.generators(), generator);
    GradedPolynomial out(p.generators());
    for (const auto& [m, c] : p.terms()) {
        const int e = m.exponents[idx];
        if (e == 0) {
            continue;
        }
        Monomial d = m;
        d.exponents[idx] -= 1;
        out.add_term(d, c * e);
    }
    return out;
}

GradedPolynomial homogeneous_component(const GradedPolynomial& p, int d) {
    GradedPolynomial out(p.generators());
    for (const auto& [m, c] : p.terms()) {
        if (degree(m, *p.generators()) == d) {
            out.add_term(m, c);
        }
    }
    return out;
}

namespace {

void enumerate(const std::vector<GeneratorSpec>& gens, std::size_t i, int remaining, Monomial& cur,
               std::vector<Monomial>& out) {
    if (i == gens.size()) {
        if (remaining == 0) {
            out.push_back(cur);
        }
        return;
    }
    const int w = gens[i].degree;
    for (int e = remaining / w; e >= 0; --e) {
        cur.exponents[i] = e;
        enumerate(gens, i + 1, remaining - e * w, cur, out);
    }
    cur.exponents[i] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(const std::vector<GeneratorSpec>& gens, int d) {
    std::vector<Monomial> out;
    if (d < 0 || d % 2 != 0) {
        return out;
    }
    Monomial cur = one_of(gens.size());
    enumerate(gens, 0, d, cur, out);
    return out;
}

GradedPolynomial substitute(const GradedPolynomial& p, std::size_t index, const GradedPolynomial& value) {
    if (!same_generators(p.generators(), value.generators())) {
        throw std::invalid_argument("substitute: polynomials over different generator lists");
    }
    std::vector<GradedPolynomial> powers{GradedPolynomial::constant(p.generators(), 1)};
    GradedPolynomial out(p.generators());
    for (const auto& [m, c] : p.terms()) {
        const int e = m.exponents[index];
        if (e == 0) {
            out.add_term(m, c);
            continue;
        }
        while (static_cast<int>(powers.size()) <= e) {
            powers.push_back(multiply(powers.back(), value));
        }
        Monomial rest = m;
        rest.exponents[index] = 0;
        for (const auto& [vm, vc] : powers[static_cast<std::size_t>(e)].terms()) {
            out.add_term(times(rest, vm), c * vc);
        }
    }
    return out;
}

GradedPolynomial change_generators(const GradedPolynomial& p, const Generators& target) {
    const auto& src = *p.generators();
    std::vector<std::optional<std::size_t>> map(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) {
        for (std::size_t j = 0; j < target->size(); ++j) {
            if ((*target)[j].name == src[i].name) {
                if ((*target)[j].degree != src[i].degree) {
                    throw std::invalid_argument("change_generators: degree mismatch for '" + src[i].name + "'");
                }
                map[i] = j;
            }
        }
    }
    GradedPolynomial out(target);
    for (const auto& [m, c] : p.terms()) {
        Monomial t = one_of(target->size());
        for (std::size_t i = 0; i < src.size(); ++i) {
            if (m.exponents[i] == 0) {
                continue;
            }
            if (!map[i]) {
                throw std::invalid_argument("change_generators: '" + src[i].name + "' missing from target");
            }
            t.exponents[*map[i]] = m.exponents[i];
        }
        out.add_term(t, c);
    }
    return out;
}

namespace {

std::string display_name(const GeneratorSpec& g, const std::map<std::string, std::string>& aliases) {
    auto it = aliases.find(g.name);
    return it == aliases.end() ? g.name : it->second;
}

// Only generators that actually occur matter.
bool needs_separator(const std::vector<GeneratorSpec>& gens, const std::vector<const Monomial*>& used,
                     const std::map<std::string, std::string>& aliases) {
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const bool occurs = std::any_of(used.begin(), used.end(), [&](const Monomial* m) { return m->exponents[i] != 0; });
        if (occurs && display_name(gens[i], aliases).size() > 1) {
            return true;
        }
    }
    return false;
}

std::string monomial_text(const Monomial& m, const std::vector<GeneratorSpec>& gens,
                          const std::map<std::string, std::string>& aliases, bool sep) {
    std::string s;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const int e = m.exponents[i];
        if (e == 0) {
            continue;
        }
        if (sep && !s.empty()) {
            s += '*';
        }
        s += display_name(gens[i], aliases);
        if (e > 1) {
            s += '^' + std::to_string(e);
        }
    }
    return s;
}

}  // namespace

std::string to_string(const Monomial& m, const std::vector<GeneratorSpec>& gens,
                      const std::map<std::string, std::string>& aliases) {
    if (m.is_one()) {
        return "1";
    }
    return monomial_text(m, gens, aliases, needs_separator(gens, {&m}, aliases));
}

std::string to_string(const GradedPolynomial& p, const std::map<std::string, std::string>& aliases) {
    if (p.is_zero()) {
        return "0";
    }
    const auto& gens = *p.generators();
    std::vector<const Monomial*> used;
    for (const auto& [m, c] : p.terms()) {
        used.push_back(&m);
    }
    const bool sep = needs_separator(gens, used, aliases);
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        const bool negative = c < 0;
        const Integer mag = abs(c);
        if (first) {
            os << (negative ? "-" : "");
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        if (m.is_one()) {
            os << mag;
            continue;
        }
        if (mag != 1) {
            os << mag;
            if (sep) {
                os << '*';
            }
        }
        os << monomial_text(m, gens, aliases, sep);
    }
    return os.str();
}

}  // namespace grasscoh
