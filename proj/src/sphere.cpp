#include "taugeo/sphere.hpp"

#include "taugeo/error.hpp"

#include <optional>

namespace taugeo {

namespace {

constexpr std::size_t kGenerators = 4;
// s-exponent of K on a, as, c, cs.
constexpr std::array<int, 4> kWeight = {-1, 1, -1, 1};

std::optional<Rational> rational_sqrt(const Rational& r) {
    if (sgn(r) < 0) return std::nullopt;
    const mpz_class& n = r.get_num();
    const mpz_class& d = r.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return Rational(rn, rd);
}

std::optional<Gaussian> gaussian_sqrt(const Gaussian& g) {
    if (g.is_real()) {
        if (sgn(g.re()) >= 0) {
            auto r = rational_sqrt(g.re());
            if (!r) return std::nullopt;
            return Gaussian(*r);
        }
        auto r = rational_sqrt(-g.re());
        if (!r) return std::nullopt;
        return Gaussian(0, *r);
    }
    // (x + iy)² = a + ib with x² = (a + |g|)/2 and y = b/(2x).
    auto modulus = rational_sqrt(g.norm());
    if (!modulus) return std::nullopt;
    auto x = rational_sqrt(Rational((g.re() + *modulus) / 2));
    if (!x || sgn(*x) == 0) return std::nullopt;
    return Gaussian(*x, Rational(g.im() / (2 * *x)));
}

std::optional<Polynomial> polynomial_sqrt(const Polynomial& p) {
    if (p.is_zero()) return p;
    if (p.degree() % 2 != 0) return std::nullopt;
    const int k = p.degree() / 2;
    auto top = gaussian_sqrt(p.lead());
    if (!top) return std::nullopt;
    std::vector<Gaussian> r(static_cast<std::size_t>(k + 1));
    r[static_cast<std::size_t>(k)] = *top;
    Gaussian twice_top = *top;
    twice_top += *top;
    Gaussian inv = twice_top.inverse();
    for (int j = k - 1; j >= 0; --j) {
        Gaussian acc = p.coeff(k + j);
        for (int i = j + 1; i <= k - 1; ++i) {
            Gaussian t = r[static_cast<std::size_t>(i)];
            t *= r[static_cast<std::size_t>(k + j - i)];
            acc -= t;
        }
        acc *= inv;
        r[static_cast<std::size_t>(j)] = acc;
    }
    Polynomial root(std::move(r));
    if (!(root * root == p)) return std::nullopt;
    return root;
}

std::optional<Scalar> exact_sqrt(const Scalar& x) {
    const auto& f = x.get<RationalFunction>();
    auto n = polynomial_sqrt(f.num());
    auto d = polynomial_sqrt(f.den());
    if (!n || !d) return std::nullopt;
    return Scalar(RationalFunction(*n, *d));
}

Endomorphism k_power_uncached(const PresentationPtr& pres, int n) {
    const ScalarField& f = pres->field();
    std::vector<Scalar> factors;
    for (int w : kWeight) factors.push_back(f.s_power(w * n));
    return Endomorphism::diagonal(pres, n == 1 ? "K" : "K^" + std::to_string(n), factors);
}

AlgebraElement gen(const PresentationPtr& pres, std::size_t g) { return AlgebraElement::generator(pres, g); }

Derivation extend_checked(const std::string& name, const Endomorphism& sigma, const Endomorphism& tau,
                          const std::vector<AlgebraElement>& images) {
    try {
        if (images.size() != kGenerators) throw InvalidActionTable(name + ": one image per generator is required");
        return Derivation::extend(name, sigma, tau, images);
    } catch (const IllDefinedDerivation& e) {
        throw InvalidActionTable(name + ": " + e.what());
    } catch (const PresentationMismatch&) {
        throw InvalidActionTable(name + ": images are not sphere elements");
    }
}

}  // namespace

PresentationPtr sphere_presentation() {
    static const PresentationPtr pres = [] {
        PresentationSpec spec;
        spec.name = "sphere";
        spec.generators = {"a", "as", "c", "cs"};
        // a and as weigh 2 so that a*as -> 1 - q^2*c*cs decreases.
        spec.weights = {2, 2, 1, 1};
        spec.star = {1, 0, 3, 2};
        spec.relations = {{"c*a", "q^-1*a*c"},  {"cs*as", "q*as*cs"}, {"cs*a", "q^-1*a*cs"},
                          {"c*as", "q*as*c"},   {"cs*c", "c*cs"},     {"as*a", "1 - c*cs"},
                          {"a*as", "1 - q^2*c*cs"}};
        spec.field = ScalarField(ScalarKind::RationalFunction);
        return Presentation::create(spec);
    }();
    return pres;
}

KAction::KAction(PresentationPtr pres) : pres_(std::move(pres)) {
    for (int n = -8; n <= 8; ++n) cache_.emplace(n, k_power_uncached(pres_, n));
}

Endomorphism KAction::power(int n) const {
    auto it = cache_.find(n);
    return it != cache_.end() ? it->second : k_power_uncached(pres_, n);
}

int KAction::weight(const Word& w) {
    int e = 0;
    for (auto g : w) e += kWeight.at(g);
    return e;
}

XActionTable XActionTable::parse(const PresentationPtr& pres, const std::array<std::string, 4>& plus,
                                 const std::array<std::string, 4>& minus, const std::array<std::string, 4>& z) {
    XActionTable t;
    for (std::size_t g = 0; g < kGenerators; ++g) {
        t.plus.push_back(parse_element(pres, plus[g]));
        t.minus.push_back(parse_element(pres, minus[g]));
        t.z.push_back(parse_element(pres, z[g]));
    }
    return t;
}

std::array<std::array<std::string, 4>, 3> XActionTable::render() const {
    std::array<std::array<std::string, 4>, 3> out;
    for (std::size_t g = 0; g < kGenerators; ++g) {
        out[0][g] = taugeo::render(plus[g]);
        out[1][g] = taugeo::render(minus[g]);
        out[2][g] = taugeo::render(z[g]);
    }
    return out;
}

Verdict twisted_commutator_check(const Derivation& plus, const Derivation& minus, const Derivation& z) {
    const PresentationPtr& pres = plus.presentation();
    const ScalarField& f = pres->field();
    Scalar q2 = f.s_power(4), qm2 = f.s_power(-4), one_q2 = f.one() + f.s_power(4);
    std::size_t cases = 0;
    for (std::size_t g = 0; g < pres->size(); ++g) {
        AlgebraElement x = gen(pres, g);
        const std::string at = " at " + pres->generators()[g] + ": ";
        struct Item {
            const char* label;
            AlgebraElement lhs, rhs;
        };
        Item items[] = {
            {"X-X+ - q^2 X+X- = Xz", minus(plus(x)) - q2 * plus(minus(x)), z(x)},
            {"q^2 XzX- - q^-2 X-Xz = (1+q^2) X-", q2 * z(minus(x)) - qm2 * minus(z(x)), one_q2 * minus(x)},
            {"q^2 X+Xz - q^-2 XzX+ = (1+q^2) X+", q2 * plus(z(x)) - qm2 * z(plus(x)), one_q2 * plus(x)},
        };
        for (const auto& item : items) {
            ++cases;
            if (!(item.lhs == item.rhs))
                return Verdict::fail(std::string(item.label) + " fails" + at + render(item.lhs) + " vs " +
                                         render(item.rhs),
                                     cases);
        }
    }
    return Verdict::pass(cases);
}

Sphere build_sphere(const XActionTable& table) {
    PresentationPtr pres = sphere_presentation();
    KAction k(pres);
    const ScalarField& f = pres->field();
    Endomorphism id = Endomorphism::identity(pres);
    Derivation xp = extend_checked("X+", id, k.power(2), table.plus);
    Derivation xm = extend_checked("X-", id, k.power(2), table.minus);
    Derivation xz = extend_checked("Xz", id, k.power(4), table.z);
    if (auto v = twisted_commutator_check(xp, xm, xz); v.failed()) throw InvalidActionTable(v.witness);

    Scalar i = f.imaginary_unit();
    Endomorphism km1 = k.power(-1), km2 = k.power(-2);
    std::vector<AlgebraElement> y1i(kGenerators, AlgebraElement(pres)), y2i = y1i, y3i = y1i;
    for (std::size_t g = 0; g < kGenerators; ++g) {
        AlgebraElement x = gen(pres, g);
        y1i[g] = i * km1(xp(x) + xm(x));
        y2i[g] = km1(xm(x) - xp(x));
        y3i[g] = i * km2(xz(x));
    }
    Derivation y1 = extend_checked("Y1", km1, k.power(1), y1i);
    Derivation y2 = extend_checked("Y2", km1, k.power(1), y2i);
    Derivation y3 = extend_checked("Y3", km2, k.power(2), y3i);
    PresentedSigma sigma(PresentedAlgebra(pres), {as_twisted(y1), as_twisted(y2), as_twisted(y3)},
                         std::vector<std::size_t>{0, 1, 2});
    std::vector<Map<AlgebraElement>> theta;
    for (int n : kOmegaExponents) theta.push_back(as_map(k.power(n)));
    SphereModule omega = free_sigma_module(sigma, 3).with_right_twist(theta).with_star();
    return Sphere{pres, k, table, xp, xm, xz, y1, y2, y3, sigma, omega};
}

SolveReport solve_x_table(int degree_bound, const Scalar& phase) {
    if (degree_bound < 1) throw PreconditionFailed("degree bound must be at least 1");
    PresentationPtr pres = sphere_presentation();
    const ScalarField& f = pres->field();
    KAction k(pres);
    Endomorphism id = Endomorphism::identity(pres);
    Endomorphism k2 = k.power(2), k4 = k.power(4);
    const Scalar unit_phase = f.promote(phase);
    if (!(unit_phase * unit_phase.conj() == f.one())) throw PreconditionFailed("phase must have modulus 1");

    // Unknowns: X₊(g) = Σ u_gw w over normal words w with K-weight weight(g) + 2.
    struct Slot {
        std::size_t g;
        Word w;
    };
    std::vector<Slot> slots;
    for (std::size_t g = 0; g < kGenerators; ++g)
        for (const Word& w : pres->normal_words(degree_bound))
            if (KAction::weight(w) == kWeight[g] + 2) slots.push_back({g, w});
    if (slots.empty()) throw NoSolution("the K-covariant ansatz for X+ is empty");

    AlgebraElement zero(pres);
    std::vector<Derivation> basis;
    for (const Slot& s : slots) {
        std::vector<AlgebraElement> images(kGenerators, zero);
        images[s.g] = AlgebraElement::word(pres, s.w);
        basis.push_back(Derivation::unchecked("B", id, k2, images));
    }
    // Each rule lhs -> rhs must map to zero: one equation per (rule, normal word).
    std::map<std::pair<std::size_t, Word>, std::vector<Scalar>> rows;
    for (std::size_t r = 0; r < pres->rules().size(); ++r) {
        const Rule& rule = pres->rules()[r];
        for (std::size_t j = 0; j < basis.size(); ++j) {
            AlgebraElement defect = basis[j].apply_word(rule.lhs);
            for (const auto& [w, c] : rule.rhs) defect -= c * basis[j].apply_word(w);
            for (const auto& [w, c] : defect.terms()) {
                auto& row = rows[{r, w}];
                if (row.empty()) row.assign(basis.size(), f.zero());
                row[j] = c;
            }
        }
    }
    ScalarMatrix m;
    for (auto& [key, row] : rows) m.push_back(std::move(row));
    auto space = m.empty() ? std::vector<std::vector<Scalar>>{} : nullspace(m, slots.size(), f);
    if (m.empty())
        for (std::size_t j = 0; j < slots.size(); ++j) {
            std::vector<Scalar> e(slots.size(), f.zero());
            e[j] = f.one();
            space.push_back(e);
        }
    SolveReport report;
    report.unknowns = slots.size();
    report.dimension = space.size();
    if (space.empty()) throw NoSolution("X+ ansatz admits only the zero derivation");
    if (space.size() > 1)
        throw NoSolution("X+ ansatz has a " + std::to_string(space.size()) +
                         "-dimensional solution space; normalization handles one dimension only");

    std::vector<AlgebraElement> b_img(kGenerators, zero);
    for (std::size_t j = 0; j < slots.size(); ++j)
        b_img[slots[j].g] += space[0][j] * AlgebraElement::word(pres, slots[j].w);
    Derivation b = Derivation::extend("B", id, k2, b_img);

    // X₋ = −K²∘X₊*, so X₊ = λB gives X₋ = λ̄C.
    std::vector<AlgebraElement> c_img(kGenerators, zero), z_img(kGenerators, zero);
    for (std::size_t g = 0; g < kGenerators; ++g) c_img[g] = -k2(b(gen(pres, pres->star_of(g))).star());
    std::optional<Derivation> c, z;
    try {
        c = Derivation::extend("C", id, k2, c_img);
    } catch (const IllDefinedDerivation& e) {
        throw NoSolution(std::string("X- from the star relation is ill-defined: ") + e.what());
    }
    // X_z = |λ|² (CB − q²BC).
    const Scalar q2 = f.s_power(4), qm2 = f.s_power(-4), one_q2 = f.one() + q2;
    for (std::size_t g = 0; g < kGenerators; ++g) z_img[g] = (*c)(b_img[g]) - q2 * b((*c)(gen(pres, g)));
    try {
        z = Derivation::extend("Z", id, k4, z_img);
    } catch (const IllDefinedDerivation& e) {
        throw NoSolution(std::string("Xz from the first commutator is ill-defined: ") + e.what());
    }

    // μ T = (1+q²) C and μ U = (1+q²) B on generators fix μ = |λ|².
    std::optional<Scalar> mu;
    auto ratio = [&](const AlgebraElement& lhs, const AlgebraElement& target) {
        for (const auto& [w, c0] : target.terms()) {
            Scalar t = lhs.coefficient(w);
            if (t.is_zero()) throw NoSolution("commutator vanishes where the target does not");
            if (!mu) mu = one_q2 * c0 / t;
            return;
        }
    };
    std::vector<std::pair<AlgebraElement, AlgebraElement>> equations;
    for (std::size_t g = 0; g < kGenerators; ++g) {
        AlgebraElement x = gen(pres, g);
        equations.push_back({q2 * (*z)((*c)(x)) - qm2 * (*c)((*z)(x)), (*c)(x)});
        equations.push_back({q2 * b((*z)(x)) - qm2 * (*z)(b(x)), b(x)});
    }
    for (const auto& [lhs, target] : equations) ratio(lhs, target);
    if (!mu) throw NoSolution("X+ and X- vanish on every generator");
    for (const auto& [lhs, target] : equations)
        if (!(*mu * lhs == one_q2 * target)) throw NoSolution("the commutators fix inconsistent values of |λ|²");
    auto rho = exact_sqrt(*mu);
    if (!rho || !(rho->conj() == *rho))
        throw NoSolution("|λ|² = " + render(*mu) + " has no real square root in Q(i)(s)");
    Scalar lambda = *rho * unit_phase;

    XActionTable table{b_img, c_img, z_img};
    for (std::size_t g = 0; g < kGenerators; ++g) {
        table.plus[g] = lambda * b_img[g];
        table.minus[g] = lambda.conj() * c_img[g];
        table.z[g] = *mu * z_img[g];
    }
    try {
        (void)build_sphere(table);
    } catch (const InvalidActionTable& e) {
        throw NoSolution(std::string("solved table fails validation: ") + e.what());
    }
    report.table = table;
    report.modulus_squared = *mu;
    report.phase = unit_phase;
    report.note = "X+ = λB with |λ|² = " + render(*mu) + "; the phase of λ is free (U(1) orbit), chosen " +
                  render(unit_phase);
    return report;
}

Verdict bimodule_relation_check(const Sphere& sphere, std::size_t samples, std::uint64_t seed) {
    const auto& pres = sphere.pres;
    const auto& module = sphere.omega;
    const ScalarField& f = pres->field();
    // Listed generator relations: ω_± g = q^∓1 g ω_± and ω_z g = q^∓2 g ω_z for g = a, c (as, cs).
    const std::array<std::array<int, 4>, 3> s_exponent = {{{-2, 2, -2, 2}, {-2, 2, -2, 2}, {-4, 4, -4, 4}}};
    std::size_t cases = 0;
    for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t g = 0; g < kGenerators; ++g) {
            ++cases;
            AlgebraElement x = gen(pres, g);
            auto lhs = module.basis_times(a, x);
            auto rhs = module.left(f.s_power(s_exponent[a][g]) * x, module.basis(a));
            if (!module.equal(lhs, rhs))
                return Verdict::fail("η" + std::to_string(a + 1) + "·" + pres->generators()[g] + " = " +
                                         module.render(lhs) + ", expected " + module.render(rhs),
                                     cases);
        }
        // Multiplicative extension: right-multiply letter by letter along a random word.
        for (std::size_t k = 0; k < samples; ++k) {
            auto srng = sample_rng(seed, k);
            std::uniform_int_distribution<int> len(1, 4), letter(0, 3);
            Word w;
            for (int n = len(srng); n > 0; --n) w.push_back(static_cast<std::uint8_t>(letter(srng)));
            AlgebraElement word = AlgebraElement::word(pres, w);
            if (word.is_zero()) continue;
            auto lhs = module.basis(a);
            for (auto g : w) lhs = module.right(lhs, gen(pres, g));
            auto rhs = module.left(sphere.k(kOmegaExponents[a], word), module.basis(a));
            ++cases;
            if (!module.equal(lhs, rhs))
                return Verdict::fail("η" + std::to_string(a + 1) + "·(" + render(word) + ") = " + module.render(lhs) +
                                         ", expected " + module.render(rhs),
                                     cases);
        }
    }
    return Verdict::pass(cases);
}

SphereModule::Vec k_hat(const Sphere& sphere, int n, const SphereModule::Vec& m) {
    sphere.omega.check(m);
    Endomorphism kn = sphere.k.power(n);
    SphereModule::Vec out;
    for (const auto& c : m) out.push_back(kn(c));
    return out;
}

Verdict k_hat_check(const Sphere& sphere, std::size_t samples, std::uint64_t seed) {
    const auto& module = sphere.omega;
    const auto alg = sphere.algebra();
    std::size_t cases = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        auto rng = sample_rng(seed, k);
        auto f = alg.random_element(rng);
        auto g = alg.random_element(rng);
        auto m = module.random_element(rng);
        ++cases;
        auto lhs = k_hat(sphere, 1, module.right(module.left(f, m), g));
        auto rhs = module.right(module.left(sphere.k(1, f), k_hat(sphere, 1, m)), sphere.k(1, g));
        if (!module.equal(lhs, rhs))
            return Verdict::fail("K̂(fmg) ≠ K(f)K̂(m)K(g) at f = " + alg.render(f) + ", m = " + module.render(m) +
                                     ", g = " + alg.render(g),
                                 cases);
        ++cases;
        auto starred = module.star(k_hat(sphere, 1, module.star(m)));
        auto inverse = k_hat(sphere, -1, m);
        if (!module.equal(starred, inverse))
            return Verdict::fail("K̂*(m) ≠ K̂⁻¹(m) at m = " + module.render(m) + ": " + module.render(starred) + " vs " +
                                     module.render(inverse),
                                 cases);
    }
    return Verdict::pass(cases);
}

SphereModule::Vec differential_d(const Sphere& sphere, const AlgebraElement& f) {
    return {sphere.x_plus(f), sphere.x_minus(f), sphere.x_z(f)};
}

SphereModule::Vec omega_to_eta(const PresentationPtr& pres, const SphereModule::Vec& m) {
    if (m.size() != 3) throw RankMismatch("one-forms have three components");
    const ScalarField& f = pres->field();
    Scalar i = f.imaginary_unit();
    Scalar half = f.rational(Rational(1, 2));
    // m₊ω₊ + m₋ω₋ + m_zω_z with ω± = (−iη₁ ∓ η₂)/2 and ω_z = −iη₃.
    return {(-i * half) * (m[0] + m[1]), half * (m[1] - m[0]), -i * m[2]};
}

SphereModule::Vec eta_to_omega(const PresentationPtr& pres, const SphereModule::Vec& m) {
    if (m.size() != 3) throw RankMismatch("one-forms have three components");
    Scalar i = pres->field().imaginary_unit();
    return {i * m[0] - m[1], i * m[0] + m[1], i * m[2]};
}

Verdict differential_leibniz_check(const Sphere& sphere, std::size_t samples, std::uint64_t seed) {
    const auto& module = sphere.omega;
    const auto alg = sphere.algebra();
    std::size_t cases = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        auto rng = sample_rng(seed, k);
        auto f = alg.random_element(rng);
        auto g = alg.random_element(rng);
        ++cases;
        auto lhs = omega_to_eta(sphere.pres, differential_d(sphere, f * g));
        auto rhs = module.left(f, omega_to_eta(sphere.pres, differential_d(sphere, g))) +
                   module.right(omega_to_eta(sphere.pres, differential_d(sphere, f)), g);
        if (!module.equal(lhs, rhs))
            return Verdict::fail("d(fg) ≠ f·dg + df·g at f = " + alg.render(f) + ", g = " + alg.render(g) + ": " +
                                     module.render(lhs) + " vs " + module.render(rhs),
                                 cases);
    }
    return Verdict::pass(cases);
}

}  // namespace taugeo
