#include "taugeo/algebra.hpp"

#include "taugeo/error.hpp"
#include "taugeo/text.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace taugeo {

void accumulate(Terms& acc, const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = acc.find(w);
    if (it == acc.end()) {
        acc.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
}

void accumulate(Terms& acc, const Terms& t, const Scalar& c) {
    if (c.is_zero()) return;
    bool unit = c.is_one();
    for (const auto& [w, x] : t) accumulate(acc, w, unit ? x : x * c);
}

namespace {

Word concat(const Word& a, const Word& b) {
    Word w;
    w.reserve(a.size() + b.size());
    w.insert(w.end(), a.begin(), a.end());
    w.insert(w.end(), b.begin(), b.end());
    return w;
}

bool valid_identifier(std::string_view name) {
    if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
    return std::all_of(name.begin(), name.end(),
                       [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; });
}

/// Symbol lookup shared by the raw and the normalizing expression contexts.
struct SymbolTable {
    const std::vector<std::string>& generators;
    const ScalarField& field;

    std::optional<std::size_t> generator(const std::string& name) const {
        for (std::size_t g = 0; g < generators.size(); ++g)
            if (generators[g] == name) return g;
        return std::nullopt;
    }

    Scalar scalar_symbol(const std::string& name) const {
        if (name == "i") return field.imaginary_unit();
        if (name == "s") return field.s_power(1);
        if (name == "q") return field.q();
        throw UnknownGenerator("unknown generator '" + name + "'");
    }

    Scalar number(const std::string& text) const {
        if (field.kind() == ScalarKind::Float) return field.complex(std::strtod(text.c_str(), nullptr));
        return field.rational(parse_decimal(text));
    }
};

/// Free-algebra evaluation used while parsing relations.
struct RawCtx {
    SymbolTable symbols;
    const std::vector<std::size_t>& star_table;

    Terms scalar(const Scalar& c) const {
        Terms t;
        accumulate(t, Word{}, c);
        return t;
    }
    Terms number(const std::string& text) const { return scalar(symbols.number(text)); }
    Terms symbol(const std::string& name) const {
        if (auto g = symbols.generator(name)) return Terms{{Word{static_cast<std::uint8_t>(*g)}, symbols.field.one()}};
        return scalar(symbols.scalar_symbol(name));
    }
    Terms add(Terms a, const Terms& b) const {
        accumulate(a, b, symbols.field.one());
        return a;
    }
    Terms sub(Terms a, const Terms& b) const {
        accumulate(a, b, -symbols.field.one());
        return a;
    }
    Terms mul(const Terms& a, const Terms& b) const {
        Terms out;
        for (const auto& [u, x] : a)
            for (const auto& [v, y] : b) accumulate(out, concat(u, v), x * y);
        return out;
    }
    Terms div(const Terms& a, const Terms& b) const {
        if (b.size() != 1 || !b.begin()->first.empty()) throw ParseError("division by a non-scalar");
        Terms out;
        accumulate(out, a, b.begin()->second.inverse());
        return out;
    }
    Terms neg(const Terms& a) const { return sub(Terms{}, a); }
    Terms pow(const Terms& a, long n) const {
        if (n < 0) return pow(div(scalar(symbols.field.one()), a), -n);
        Terms acc = scalar(symbols.field.one());
        for (long k = 0; k < n; ++k) acc = mul(acc, a);
        return acc;
    }
    Terms star_terms(const Terms& a) const {
        if (star_table.empty()) throw NoStarStructure();
        Terms out;
        for (const auto& [w, c] : a) {
            Word s(w.rbegin(), w.rend());
            for (auto& g : s) g = static_cast<std::uint8_t>(star_table[g]);
            accumulate(out, s, c.conj());
        }
        return out;
    }
    Terms star(const Terms& a) const { return star_terms(a); }
};

struct ElementCtx {
    PresentationPtr pres;
    SymbolTable symbols;

    AlgebraElement number(const std::string& text) const {
        return AlgebraElement::scalar(pres, symbols.number(text));
    }
    AlgebraElement symbol(const std::string& name) const {
        if (auto g = symbols.generator(name)) return AlgebraElement::generator(pres, *g);
        return AlgebraElement::scalar(pres, symbols.scalar_symbol(name));
    }
    AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) const { return a + b; }
    AlgebraElement sub(const AlgebraElement& a, const AlgebraElement& b) const { return a - b; }
    AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) const { return a * b; }
    AlgebraElement div(const AlgebraElement& a, const AlgebraElement& b) const {
        if (!b.is_scalar() || b.is_zero()) {
            if (b.is_zero()) throw DivisionByZero();
            throw ParseError("division by a non-scalar");
        }
        return b.scalar_part().inverse() * a;
    }
    AlgebraElement neg(const AlgebraElement& a) const { return -a; }
    AlgebraElement pow(const AlgebraElement& a, long n) const {
        if (n < 0) return pow(div(AlgebraElement::scalar(pres, pres->field().one()), a), -n);
        return power(a, static_cast<int>(n));
    }
    AlgebraElement star(const AlgebraElement& a) const { return a.star(); }
};

}  // namespace

PresentationPtr Presentation::create(PresentationSpec spec) {
    std::shared_ptr<Presentation> p(new Presentation());
    p->name_ = spec.name;
    p->field_ = spec.field;
    p->generators_ = spec.generators;
    p->commutative_ = spec.commutative;
    p->overlap_degree_ = spec.overlap_degree;
    std::size_t n = spec.generators.size();
    if (n > 255) throw StructuralError("too many generators");
    p->weights_ = spec.weights.empty() ? std::vector<int>(n, 1) : spec.weights;
    if (p->weights_.size() != n) throw StructuralError("weight table size differs from generator count");
    for (int w : p->weights_)
        if (w <= 0) throw StructuralError("generator weights must be positive");
    p->star_ = spec.star;
    if (!p->star_.empty() && p->star_.size() != n) throw StructuralError("star table size differs from generator count");

    for (std::size_t g = 0; g < n; ++g) {
        const std::string& name = spec.generators[g];
        if (name == "i" || name == "s" || name == "q")
            throw StructuralError("generator name '" + name + "' is reserved for scalars");
        for (std::size_t h = 0; h < g; ++h)
            if (spec.generators[h] == name) throw StructuralError("duplicate generator '" + name + "'");
        if (valid_identifier(name)) continue;
        std::string_view base(name);
        bool starred = base.size() > 2 && base.substr(base.size() - 2) == "^*";
        if (!starred || !valid_identifier(base.substr(0, base.size() - 2)))
            throw StructuralError("invalid generator name '" + name + "'");
        if (p->star_.empty()) throw StructuralError("generator '" + name + "' needs a star structure");
        const std::string& partner = spec.generators[p->star_[g]];
        if (partner != base.substr(0, base.size() - 2))
            throw StructuralError("generator '" + name + "' is not the star of '" + partner + "'");
    }
    for (std::size_t g = 0; g < p->star_.size(); ++g) {
        if (p->star_[g] >= n || p->star_[p->star_[g]] != g) throw StructuralError("star table is not an involution");
    }

    RawCtx raw{SymbolTable{p->generators_, p->field_}, p->star_};
    for (const auto& [lhs_text, rhs_text] : spec.relations) {
        Terms lhs = fold(*parse_expr(lhs_text), raw);
        if (lhs.size() != 1 || !lhs.begin()->second.is_one() || lhs.begin()->first.empty())
            throw StructuralError("relation left side '" + lhs_text + "' must be a single monomial");
        Rule rule;
        rule.lhs = lhs.begin()->first;
        rule.rhs = fold(*parse_expr(rhs_text), raw);
        rule.text = lhs_text + " -> " + rhs_text;
        p->rules_.push_back(std::move(rule));
    }
    if (spec.commutative) {
        for (std::size_t g = 0; g < n; ++g) {
            for (std::size_t h = g + 1; h < n; ++h) {
                Rule rule;
                rule.lhs = Word{static_cast<std::uint8_t>(h), static_cast<std::uint8_t>(g)};
                rule.rhs = Terms{{Word{static_cast<std::uint8_t>(g), static_cast<std::uint8_t>(h)}, p->field_.one()}};
                rule.text = p->generators_[h] + "*" + p->generators_[g] + " -> " + p->generators_[g] + "*" +
                            p->generators_[h];
                p->rules_.push_back(std::move(rule));
            }
        }
    }
    p->check_termination();
    p->check_confluence();
    if (p->has_star()) p->check_star();
    return p;
}

std::size_t Presentation::star_of(std::size_t g) const {
    if (star_.empty()) throw NoStarStructure();
    return star_[g];
}

std::size_t Presentation::index_of(std::string_view name) const {
    for (std::size_t g = 0; g < generators_.size(); ++g)
        if (generators_[g] == name) return g;
    throw UnknownGenerator("unknown generator '" + std::string(name) + "' in " + name_);
}

bool Presentation::has_generator(std::string_view name) const {
    return std::find(generators_.begin(), generators_.end(), name) != generators_.end();
}

int Presentation::weight(const Word& w) const {
    int total = 0;
    for (auto g : w) total += weights_[g];
    return total;
}

bool Presentation::less(const Word& u, const Word& v) const {
    int wu = weight(u);
    int wv = weight(v);
    if (wu != wv) return wu < wv;
    return u < v;
}

bool Presentation::find_redex(const Word& w, std::size_t& rule, std::size_t& pos) const {
    for (std::size_t p = 0; p < w.size(); ++p) {
        for (std::size_t r = 0; r < rules_.size(); ++r) {
            const Word& lhs = rules_[r].lhs;
            if (p + lhs.size() > w.size()) continue;
            if (std::equal(lhs.begin(), lhs.end(), w.begin() + static_cast<std::ptrdiff_t>(p))) {
                rule = r;
                pos = p;
                return true;
            }
        }
    }
    return false;
}

bool Presentation::is_normal(const Word& w) const {
    std::size_t r, p;
    return !find_redex(w, r, p);
}

Terms Presentation::rewrite_at(const Word& w, std::size_t rule, std::size_t pos) const {
    const Rule& r = rules_[rule];
    Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
    Word suffix(w.begin() + static_cast<std::ptrdiff_t>(pos + r.lhs.size()), w.end());
    Terms out;
    for (const auto& [u, c] : r.rhs) accumulate(out, concat(concat(prefix, u), suffix), c);
    return out;
}

const Terms& Presentation::reduce(const Word& w) const {
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = cache_.find(w);
        if (it != cache_.end()) return it->second;
    }
    std::size_t rule, pos;
    Terms result;
    if (!find_redex(w, rule, pos)) {
        result.emplace(w, field_.one());
    } else {
        for (const auto& [u, c] : rewrite_at(w, rule, pos)) accumulate(result, reduce(u), c);
    }
    std::lock_guard<std::mutex> lock(cache_mutex_);
    return cache_.emplace(w, std::move(result)).first->second;
}

Terms Presentation::reduce(const Terms& raw) const {
    Terms out;
    for (const auto& [w, c] : raw) accumulate(out, reduce(w), c);
    return out;
}

Word Presentation::star_word(const Word& w) const {
    if (star_.empty()) throw NoStarStructure();
    Word s(w.rbegin(), w.rend());
    for (auto& g : s) g = static_cast<std::uint8_t>(star_[g]);
    return s;
}

void Presentation::check_termination() const {
    for (const Rule& r : rules_) {
        for (const auto& [w, c] : r.rhs) {
            (void)c;
            if (!less(w, r.lhs))
                throw StructuralError("relation " + r.text + " does not decrease the monomial order at " +
                                      render_word(w));
        }
    }
}

void Presentation::check_confluence() const {
    auto fail = [&](const Rule& a, const Rule& b, const Word& w, const Terms& x, const Terms& y) {
        throw StructuralError("critical pair of " + a.text + " and " + b.text + " on " + render_word(w) +
                              " is not confluent: " + render(AlgebraElement(shared_from_this(), x)) + " vs " +
                              render(AlgebraElement(shared_from_this(), y)));
    };
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        for (std::size_t j = 0; j < rules_.size(); ++j) {
            const Word& l1 = rules_[i].lhs;
            const Word& l2 = rules_[j].lhs;
            std::size_t max_k = std::min(l1.size(), l2.size());
            for (std::size_t k = 1; k < max_k; ++k) {
                if (!std::equal(l1.end() - static_cast<std::ptrdiff_t>(k), l1.end(), l2.begin())) continue;
                Word w = concat(l1, Word(l2.begin() + static_cast<std::ptrdiff_t>(k), l2.end()));
                if (static_cast<int>(w.size()) > overlap_degree_) continue;
                Terms x = reduce(rewrite_at(w, i, 0));
                Terms y = reduce(rewrite_at(w, j, l1.size() - k));
                if (x != y) fail(rules_[i], rules_[j], w, x, y);
            }
            if (i == j || l2.size() > l1.size()) continue;
            for (std::size_t p = 0; p + l2.size() <= l1.size(); ++p) {
                if (!std::equal(l2.begin(), l2.end(), l1.begin() + static_cast<std::ptrdiff_t>(p))) continue;
                Terms x = reduce(rewrite_at(l1, i, 0));
                Terms y = reduce(rewrite_at(l1, j, p));
                if (x != y) fail(rules_[i], rules_[j], l1, x, y);
            }
        }
    }
}

void Presentation::check_star() const {
    for (const Rule& r : rules_) {
        Terms lhs = reduce(star_word(r.lhs));
        Terms rhs;
        for (const auto& [w, c] : r.rhs) accumulate(rhs, reduce(star_word(w)), c.conj());
        if (lhs != rhs)
            throw StructuralError("star table does not respect relation " + r.text);
    }
}

std::string Presentation::render_word(const Word& w) const {
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t k = 0; k < w.size();) {
        std::size_t run = 1;
        while (k + run < w.size() && w[k + run] == w[k]) ++run;
        if (!out.empty()) out += "*";
        out += generators_[w[k]];
        if (run > 1) out += "^" + std::to_string(run);
        k += run;
    }
    return out;
}

std::vector<Word> Presentation::normal_words(int max_length) const {
    std::vector<Word> all{Word{}};
    std::vector<Word> frontier{Word{}};
    for (int len = 1; len <= max_length; ++len) {
        std::vector<Word> next;
        for (const Word& w : frontier) {
            for (std::size_t g = 0; g < generators_.size(); ++g) {
                Word ext = w;
                ext.push_back(static_cast<std::uint8_t>(g));
                if (is_normal(ext)) next.push_back(ext);
            }
        }
        all.insert(all.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    std::sort(all.begin(), all.end(), [this](const Word& a, const Word& b) { return less(a, b); });
    return all;
}

AlgebraElement::AlgebraElement(PresentationPtr pres, const Terms& raw) : pres_(std::move(pres)) {
    terms_ = pres_->reduce(raw);
}

AlgebraElement AlgebraElement::scalar(PresentationPtr pres, const Scalar& c) {
    AlgebraElement e(pres);
    accumulate(e.terms_, Word{}, pres->field().promote(c));
    return e;
}

AlgebraElement AlgebraElement::generator(PresentationPtr pres, std::size_t g) {
    if (g >= pres->size()) throw UnknownGenerator("generator index out of range");
    return word(std::move(pres), Word{static_cast<std::uint8_t>(g)});
}

AlgebraElement AlgebraElement::word(PresentationPtr pres, const Word& w) {
    AlgebraElement e(pres);
    e.terms_ = pres->reduce(w);
    return e;
}

bool AlgebraElement::is_scalar() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

Scalar AlgebraElement::scalar_part() const { return coefficient(Word{}); }

Scalar AlgebraElement::coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? pres_->field().zero() : it->second;
}

AlgebraElement AlgebraElement::star() const {
    AlgebraElement out(pres_);
    for (const auto& [w, c] : terms_) accumulate(out.terms_, pres_->reduce(pres_->star_word(w)), c.conj());
    return out;
}

AlgebraElement AlgebraElement::operator-() const {
    AlgebraElement out(pres_);
    for (const auto& [w, c] : terms_) out.terms_.emplace(w, -c);
    return out;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    if (pres_ != o.pres_) throw PresentationMismatch();
    accumulate(terms_, o.terms_, pres_->field().one());
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
    if (pres_ != o.pres_) throw PresentationMismatch();
    accumulate(terms_, o.terms_, -pres_->field().one());
    return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.pres_ != b.pres_) throw PresentationMismatch();
    AlgebraElement out(a.pres_);
    for (const auto& [u, x] : a.terms_) {
        for (const auto& [v, y] : b.terms_) {
            Scalar c = x * y;
            if (u.empty() || v.empty()) {
                accumulate(out.terms_, concat(u, v), c);
                continue;
            }
            accumulate(out.terms_, a.pres_->reduce(concat(u, v)), c);
        }
    }
    return out;
}

AlgebraElement operator*(const Scalar& c, const AlgebraElement& a) {
    AlgebraElement out(a.pres_);
    Scalar k = a.pres_->field().promote(c);
    if (k.is_zero()) return out;
    for (const auto& [w, x] : a.terms_) accumulate(out.terms_, w, x * k);
    return out;
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.pres_ != b.pres_) throw PresentationMismatch();
    if (a.pres_->field().kind() != ScalarKind::Float) return a.terms_ == b.terms_;
    AlgebraElement d = a - b;
    return d.is_zero();
}

std::string render(const AlgebraElement& e) {
    if (e.is_zero()) return "0";
    const auto& pres = *e.presentation();
    std::vector<const Terms::value_type*> order;
    for (const auto& t : e.terms()) order.push_back(&t);
    std::sort(order.begin(), order.end(), [&](auto* x, auto* y) { return pres.less(x->first, y->first); });
    std::string out;
    for (const auto* t : order) {
        const Word& w = t->first;
        const Scalar& c = t->second;
        std::string term;
        if (w.empty()) {
            term = render(c);
        } else if (c.is_one()) {
            term = pres.render_word(w);
        } else if ((-c).is_one()) {
            term = "-" + pres.render_word(w);
        } else {
            term = parenthesize_sum(render(c)) + "*" + pres.render_word(w);
        }
        if (!out.empty() && term[0] != '-') out += "+";
        out += term;
    }
    return out;
}

AlgebraElement normal_form(const PresentationPtr& pres, const Expr& e) {
    return fold(e, ElementCtx{pres, SymbolTable{pres->generators(), pres->field()}});
}

AlgebraElement parse_element(const PresentationPtr& pres, std::string_view text) {
    return normal_form(pres, *parse_expr(text));
}

AlgebraElement power(const AlgebraElement& e, int n) {
    AlgebraElement acc = AlgebraElement::scalar(e.presentation(), e.presentation()->field().one());
    for (int k = 0; k < n; ++k) acc = acc * e;
    return acc;
}

AlgebraElement random_element(const PresentationPtr& pres, std::mt19937_64& rng, int max_degree) {
    const ScalarField& f = pres->field();
    std::vector<Scalar> coeffs{f.integer(1), f.integer(-1), f.rational(Rational(1, 2)), f.rational(Rational(-1, 2))};
    if (f.has_imaginary_unit()) {
        coeffs.push_back(f.imaginary_unit());
        coeffs.push_back(-f.imaginary_unit());
    }
    if (f.has_s()) {
        coeffs.push_back(f.s_power(1));
        coeffs.push_back(f.s_power(-1));
    }
    std::uniform_int_distribution<int> n_terms(1, 3);
    std::uniform_int_distribution<int> length(0, max_degree);
    std::uniform_int_distribution<std::size_t> letter(0, pres->size() == 0 ? 0 : pres->size() - 1);
    if (pres->size() == 0) length = std::uniform_int_distribution<int>(0, 0);
    std::uniform_int_distribution<std::size_t> pick(0, coeffs.size() - 1);
    AlgebraElement out(pres);
    int count = n_terms(rng);
    for (int t = 0; t < count; ++t) {
        Word w(static_cast<std::size_t>(length(rng)));
        for (auto& g : w) g = static_cast<std::uint8_t>(letter(rng));
        out += coeffs[pick(rng)] * AlgebraElement::word(pres, w);
    }
    return out;
}

}  // namespace taugeo
