#pragma once

/** @file algebra.hpp
 *  Finitely presented associative algebras with a terminating, confluent
 *  rewrite system, and their elements in normal form.
 */

#include "taugeo/expr.hpp"
#include "taugeo/scalar.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace taugeo {

using Word = std::vector<std::uint8_t>;
using Terms = std::map<Word, Scalar>;

struct Rule {
    Word lhs;
    Terms rhs;
    std::string text;
};

class Presentation;
using PresentationPtr = std::shared_ptr<const Presentation>;

struct PresentationSpec {
    std::string name;
    std::vector<std::string> generators;
    /// Degree weights used by the monomial order; empty means all 1.
    std::vector<int> weights;
    /// star[g] is the generator g* ; empty means no star structure.
    std::vector<std::size_t> star;
    /// Oriented relations as text, e.g. {"c*a", "q^-1*a*c"}.
    std::vector<std::pair<std::string, std::string>> relations;
    ScalarField field;
    bool commutative = false;
    int overlap_degree = 4;
};

/// Immutable after construction; the normal-form cache is internally synchronized.
class Presentation : public std::enable_shared_from_this<Presentation> {
public:
    static PresentationPtr create(PresentationSpec spec);

    const std::string& name() const { return name_; }
    const ScalarField& field() const { return field_; }
    std::size_t size() const { return generators_.size(); }
    const std::vector<std::string>& generators() const { return generators_; }
    const std::vector<Rule>& rules() const { return rules_; }
    bool commutative() const { return commutative_; }
    bool has_star() const { return !star_.empty(); }
    std::size_t star_of(std::size_t g) const;
    int overlap_degree() const { return overlap_degree_; }

    /// Throws UnknownGenerator.
    std::size_t index_of(std::string_view name) const;
    bool has_generator(std::string_view name) const;

    /// Weighted degree, then lexicographic by generator index.
    bool less(const Word& u, const Word& v) const;
    int weight(const Word& w) const;
    bool is_normal(const Word& w) const;
    /// Normal form of a single word.
    /// Reference into the memo table; stays valid for the presentation's lifetime.
    const Terms& reduce(const Word& w) const;
    /// Normal form of a linear combination of arbitrary words.
    Terms reduce(const Terms& raw) const;
    /// Reverses the word and maps each letter through the star table.
    Word star_word(const Word& w) const;

    std::string render_word(const Word& w) const;
    /// Normal words of length at most max_length, in increasing order.
    std::vector<Word> normal_words(int max_length) const;

private:
    Presentation() = default;
    void check_termination() const;
    void check_confluence() const;
    void check_star() const;
    bool find_redex(const Word& w, std::size_t& rule, std::size_t& pos) const;
    Terms rewrite_at(const Word& w, std::size_t rule, std::size_t pos) const;

    std::string name_;
    ScalarField field_;
    std::vector<std::string> generators_;
    std::vector<int> weights_;
    std::vector<std::size_t> star_;
    std::vector<Rule> rules_;
    bool commutative_ = false;
    int overlap_degree_ = 4;

    mutable std::mutex cache_mutex_;
    mutable std::map<Word, Terms> cache_;
};

/// Adds c*t into acc, dropping zero coefficients.
void accumulate(Terms& acc, const Word& w, const Scalar& c);
void accumulate(Terms& acc, const Terms& t, const Scalar& c);

class AlgebraElement {
public:
    explicit AlgebraElement(PresentationPtr pres) : pres_(std::move(pres)) {}
    /// Normalizes raw terms.
    AlgebraElement(PresentationPtr pres, const Terms& raw);

    static AlgebraElement scalar(PresentationPtr pres, const Scalar& c);
    static AlgebraElement generator(PresentationPtr pres, std::size_t g);
    static AlgebraElement word(PresentationPtr pres, const Word& w);

    const PresentationPtr& presentation() const { return pres_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// True when the element lies in the scalar line.
    bool is_scalar() const;
    Scalar scalar_part() const;
    Scalar coefficient(const Word& w) const;

    AlgebraElement star() const;

    AlgebraElement operator-() const;
    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement& operator-=(const AlgebraElement& o);
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement operator*(const Scalar& c, const AlgebraElement& a);
    friend AlgebraElement operator*(const AlgebraElement& a, const Scalar& c) { return c * a; }
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);
    friend bool operator!=(const AlgebraElement& a, const AlgebraElement& b) { return !(a == b); }

private:
    PresentationPtr pres_;
    Terms terms_;
};

std::string render(const AlgebraElement& e);

/// normal_form of a raw expression tree.
AlgebraElement normal_form(const PresentationPtr& pres, const Expr& e);
AlgebraElement parse_element(const PresentationPtr& pres, std::string_view text);

AlgebraElement power(const AlgebraElement& e, int n);

/// Random element: 1 to 3 terms, monomials of length at most max_degree,
/// coefficients from {±1, ±i, ±1/2, s, 1/s} restricted to the field.
AlgebraElement random_element(const PresentationPtr& pres, std::mt19937_64& rng, int max_degree = 3);

}  // namespace taugeo
