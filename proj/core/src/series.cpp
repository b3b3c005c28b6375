#include "pclab/series.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace pclab {

struct SeriesExpr::Node {
    Kind kind;
    int m = 1;
    MultiPoly num, den;           // rational
    std::string name;             // oracle
    unsigned long param = 1;      // oracle (log1p step)
    std::function<CycloElement(const MultiIndex&)> fn;  // custom oracle
    std::shared_ptr<const Node> left, right;            // hadamard / unary (left)
    std::vector<CycloElement> weights;                  // line betas / affine alphas
};

SeriesExpr SeriesExpr::rational(MultiPoly num, MultiPoly den) {
    if (num.m != den.m)
        throw ArityError("numerator has m = " + std::to_string(num.m) + ", denominator m = " +
                         std::to_string(den.m));
    if (den.at_origin().is_zero())
        throw InvalidDenominatorError("denominator vanishes at the origin: not a power series at 0");
    auto node = std::make_shared<Node>();
    node->kind = Kind::rational;
    node->m = num.m;
    node->num = std::move(num);
    node->den = std::move(den);
    return SeriesExpr(std::move(node));
}

SeriesExpr SeriesExpr::log1p(unsigned long k) {
    if (k == 0) throw Error("internal", "log1p step must be positive");
    auto node = std::make_shared<Node>();
    node->kind = Kind::oracle;
    node->m = 1;
    node->name = "log1p";
    node->param = k;
    return SeriesExpr(std::move(node));
}

SeriesExpr SeriesExpr::expseries() {
    auto node = std::make_shared<Node>();
    node->kind = Kind::oracle;
    node->m = 1;
    node->name = "expseries";
    return SeriesExpr(std::move(node));
}

SeriesExpr SeriesExpr::gapfact() {
    auto node = std::make_shared<Node>();
    node->kind = Kind::oracle;
    node->m = 2;
    node->name = "gapfact";
    return SeriesExpr(std::move(node));
}

SeriesExpr SeriesExpr::custom_oracle(int m, std::string name,
                                     std::function<CycloElement(const MultiIndex&)> fn) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::oracle;
    node->m = m;
    node->name = std::move(name);
    node->fn = std::move(fn);
    return SeriesExpr(std::move(node));
}

int SeriesExpr::arity() const { return node_->m; }
SeriesExpr::Kind SeriesExpr::kind() const { return node_->kind; }
const std::string& SeriesExpr::oracle_name() const { return node_->name; }
unsigned long SeriesExpr::oracle_param() const { return node_->param; }
const MultiPoly& SeriesExpr::num() const { return node_->num; }
const MultiPoly& SeriesExpr::den() const { return node_->den; }
SeriesExpr SeriesExpr::child(int i) const {
    return SeriesExpr(i == 0 ? node_->left : node_->right);
}
const std::vector<CycloElement>& SeriesExpr::weights() const { return node_->weights; }

SeriesExpr hadamard(const SeriesExpr& f, const SeriesExpr& g) {
    if (f.arity() != g.arity())
        throw ArityError("hadamard operands disagree: m = " + std::to_string(f.arity()) +
                         " vs m = " + std::to_string(g.arity()));
    auto node = std::make_shared<SeriesExpr::Node>();
    node->kind = SeriesExpr::Kind::hadamard;
    node->m = f.arity();
    node->left = f.node_;
    node->right = g.node_;
    return SeriesExpr(std::move(node));
}

SeriesExpr conjugate_series(const SeriesExpr& f) {
    auto node = std::make_shared<SeriesExpr::Node>();
    node->kind = SeriesExpr::Kind::conjugate;
    node->m = f.arity();
    node->left = f.node_;
    return SeriesExpr(std::move(node));
}

SeriesExpr abs_square(const SeriesExpr& f) {
    auto node = std::make_shared<SeriesExpr::Node>();
    node->kind = SeriesExpr::Kind::abs_square;
    node->m = f.arity();
    node->left = f.node_;
    return SeriesExpr(std::move(node));
}

SeriesExpr line_specialize(const SeriesExpr& f, std::vector<CycloElement> betas) {
    if (static_cast<int>(betas.size()) != f.arity())
        throw ArityError("line specialization needs " + std::to_string(f.arity()) +
                         " weights, got " + std::to_string(betas.size()));
    auto node = std::make_shared<SeriesExpr::Node>();
    node->kind = SeriesExpr::Kind::line_spec;
    node->m = 1;
    node->left = f.node_;
    node->weights = std::move(betas);
    return SeriesExpr(std::move(node));
}

SeriesExpr affine_substitute(const SeriesExpr& f, std::vector<CycloElement> alphas) {
    if (f.arity() < 2)
        throw ArityError("affine substitution needs m >= 2, got m = " + std::to_string(f.arity()));
    if (static_cast<int>(alphas.size()) != f.arity() - 1)
        throw ArityError("affine substitution needs " + std::to_string(f.arity() - 1) +
                         " weights, got " + std::to_string(alphas.size()));
    auto node = std::make_shared<SeriesExpr::Node>();
    node->kind = SeriesExpr::Kind::affine_sub;
    node->m = f.arity() - 1;
    node->left = f.node_;
    node->weights = std::move(alphas);
    return SeriesExpr(std::move(node));
}

// ---------------------------------------------------------------------------
// Shell enumeration

std::vector<MultiIndex> shell_indices(int m, int d) {
    std::vector<MultiIndex> out;
    MultiIndex cur(m, 0);
    // lex enumeration of compositions of d into m parts
    std::function<void(int, int)> rec = [&](int pos, int rest) {
        if (pos == m - 1) {
            cur[pos] = rest;
            out.push_back(cur);
            return;
        }
        for (int v = rest; v >= 0; --v) {
            cur[pos] = v;
            rec(pos + 1, rest - v);
        }
    };
    if (m == 0) {
        if (d == 0) out.push_back({});
        return out;
    }
    rec(0, d);
    return out;
}

// ---------------------------------------------------------------------------
// Cursors

namespace {

using Shell = std::vector<std::pair<MultiIndex, CycloElement>>;
using ShellMap = std::unordered_map<MultiIndex, CycloElement, MultiIndexHash>;

using NodePtr = std::shared_ptr<const SeriesExpr::Node>;

std::unique_ptr<ShellCursor> make_cursor(const NodePtr& node);

// Number of compositions of r into p non-negative parts: C(r + p - 1, p - 1).
unsigned long composition_count(unsigned long r, unsigned long p) {
    if (p == 0) return r == 0 ? 1 : 0;
    unsigned long num = 1, den = 1;
    for (unsigned long i = 1; i < p; ++i) {
        num *= r + i;
        den *= i;
    }
    return num / den;
}

// Rank of n within shell_indices(m, |n|); the enumeration is lexicographic
// with the leading coordinate descending.
unsigned long shell_rank(const MultiIndex& n) {
    const size_t m = n.size();
    unsigned long rank = 0;
    int rest = total_degree(n);
    for (size_t i = 0; i + 1 < m; ++i) {
        const unsigned long p = m - i - 1;
        if (rest > n[i]) rank += composition_count(static_cast<unsigned long>(rest - n[i] - 1), p + 1);
        rest -= n[i];
    }
    return rank;
}

class RationalCursor final : public ShellCursor {
   public:
    explicit RationalCursor(const NodePtr& node)
        : m_(node->m), num_(node->num), inv_b0_(node->den.at_origin().inverse()) {
        trivial_b0_ = node->den.at_origin() == CycloElement(1L);
        const MultiIndex origin(m_, 0);
        for (const auto& [k, v] : node->den.terms)
            if (k != origin) supp_.emplace_back(k, v);
        window_depth_ = std::max(1, node->den.degree());
    }

    int arity() const override { return m_; }

    Shell next() override {
        const int d = degree_;
        std::vector<CycloElement> acc(composition_count(d, m_));
        for (const auto& [n, c] : num_.terms)
            if (total_degree(n) == d) acc[shell_rank(n)] = c;
        MultiIndex shifted(m_);
        for (const auto& [k, b] : supp_) {
            const int back = total_degree(k);
            if (back > static_cast<int>(window_.size())) continue;
            for (const auto& [p, f] : window_[window_.size() - back]) {
                for (int i = 0; i < m_; ++i) shifted[i] = p[i] + k[i];
                acc[shell_rank(shifted)] -= b * f;
            }
        }
        Shell out;
        unsigned long idx = 0;
        for (MultiIndex& n : shell_indices(m_, d)) {
            CycloElement& v = acc[idx++];
            if (!v.is_zero())
                out.emplace_back(std::move(n), trivial_b0_ ? std::move(v) : v * inv_b0_);
        }
        window_.push_back(out);
        if (static_cast<int>(window_.size()) > window_depth_) window_.pop_front();
        ++degree_;
        return out;
    }

   private:
    int m_;
    MultiPoly num_;
    CycloElement inv_b0_;
    bool trivial_b0_;
    std::vector<std::pair<MultiIndex, CycloElement>> supp_;
    std::deque<Shell> window_;  // window_[size - j] is the shell j degrees back
    int window_depth_;
    int degree_ = 0;
};

class OracleCursor final : public ShellCursor {
   public:
    explicit OracleCursor(const NodePtr& node) : node_(node) {}

    int arity() const override { return node_->m; }

    Shell next() override {
        Shell out;
        const int n = degree_++;
        if (node_->fn) {
            for (const MultiIndex& idx : shell_indices(node_->m, n)) {
                CycloElement c = node_->fn(idx);
                if (!c.is_zero()) out.emplace_back(idx, std::move(c));
            }
        } else if (node_->name == "log1p") {
            const unsigned long k = node_->param;
            if (n > 0 && n % static_cast<int>(k) == 0) {
                long j = n / static_cast<long>(k);
                Rat c(j % 2 == 1 ? 1 : -1, j);
                c.canonicalize();
                out.emplace_back(MultiIndex{n}, CycloElement(c));
            }
        } else if (node_->name == "expseries") {
            Rat c(Int(1), factorial(static_cast<unsigned long>(n)));
            c.canonicalize();
            out.emplace_back(MultiIndex{n}, CycloElement(c));
        } else if (node_->name == "gapfact") {
            for (long a = 0;; ++a) {
                Int f = factorial(static_cast<unsigned long>(a));
                Int total = f + a;
                if (total > n) break;
                if (total == n) out.emplace_back(MultiIndex{static_cast<int>(a), static_cast<int>(f.get_si())}, CycloElement(1L));
            }
        } else {
            throw Error("internal", "unknown oracle " + node_->name);
        }
        return out;
    }

   private:
    NodePtr node_;
    int degree_ = 0;
};

class HadamardCursor final : public ShellCursor {
   public:
    HadamardCursor(const NodePtr& node)
        : m_(node->m), left_(make_cursor(node->left)), right_(make_cursor(node->right)) {}

    int arity() const override { return m_; }

    Shell next() override {
        Shell l = left_->next();
        Shell r = right_->next();
        ShellMap rm(r.begin(), r.end());
        Shell out;
        for (auto& [n, c] : l) {
            auto it = rm.find(n);
            if (it == rm.end()) continue;
            CycloElement p = c * it->second;
            if (!p.is_zero()) out.emplace_back(n, std::move(p));
        }
        return out;
    }

   private:
    int m_;
    std::unique_ptr<ShellCursor> left_, right_;
};

class ConjugateCursor final : public ShellCursor {
   public:
    ConjugateCursor(const NodePtr& node) : inner_(make_cursor(node->left)) {}
    int arity() const override { return inner_->arity(); }
    Shell next() override {
        Shell s = inner_->next();
        for (auto& [n, c] : s) c = conjugate(c);
        return s;
    }

   private:
    std::unique_ptr<ShellCursor> inner_;
};

class AbsSquareCursor final : public ShellCursor {
   public:
    AbsSquareCursor(const NodePtr& node) : inner_(make_cursor(node->left)) {}
    int arity() const override { return inner_->arity(); }
    Shell next() override {
        Shell s = inner_->next();
        for (auto& [n, c] : s) c = c * conjugate(c);
        return s;
    }

   private:
    std::unique_ptr<ShellCursor> inner_;
};

class LineSpecCursor final : public ShellCursor {
   public:
    LineSpecCursor(const NodePtr& node)
        : inner_(make_cursor(node->left)), betas_(node->weights) {}

    int arity() const override { return 1; }

    Shell next() override {
        Shell s = inner_->next();
        CycloElement acc;
        for (const auto& [n, c] : s) {
            CycloElement w = c;
            for (size_t i = 0; i < betas_.size(); ++i)
                if (n[i] > 0) w = w * betas_[i].pow(n[i]);
            acc += w;
        }
        const int d = degree_++;
        Shell out;
        if (!acc.is_zero()) out.emplace_back(MultiIndex{d}, std::move(acc));
        return out;
    }

   private:
    std::unique_ptr<ShellCursor> inner_;
    std::vector<CycloElement> betas_;
    int degree_ = 0;
};

class AffineSubCursor final : public ShellCursor {
   public:
    AffineSubCursor(const NodePtr& node)
        : m_(node->m), inner_(make_cursor(node->left)), alphas_(node->weights) {}

    int arity() const override { return m_; }

    Shell next() override {
        Shell s = inner_->next();
        std::map<MultiIndex, CycloElement, GrlexLess> acc;
        for (const auto& [n, c] : s) {
            const int last = n[m_];  // exponent of the substituted variable
            for (const MultiIndex& j : shell_indices(m_, last)) {
                // multinomial(last; j) * prod alpha_i^{j_i}
                Int coef = factorial(static_cast<unsigned long>(last));
                for (int i = 0; i < m_; ++i) coef /= factorial(static_cast<unsigned long>(j[i]));
                CycloElement w = CycloElement(coef) * c;
                for (int i = 0; i < m_ && !w.is_zero(); ++i)
                    if (j[i] > 0) w = w * alphas_[i].pow(j[i]);
                if (w.is_zero()) continue;
                MultiIndex out_idx(m_);
                for (int i = 0; i < m_; ++i) out_idx[i] = n[i] + j[i];
                auto [it, inserted] = acc.emplace(out_idx, w);
                if (!inserted) {
                    it->second += w;
                    if (it->second.is_zero()) acc.erase(it);
                }
            }
        }
        Shell out(acc.begin(), acc.end());
        return out;
    }

   private:
    int m_;  // output arity (= inner arity - 1)
    std::unique_ptr<ShellCursor> inner_;
    std::vector<CycloElement> alphas_;
};

std::unique_ptr<ShellCursor> make_cursor(const NodePtr& node) {
    switch (node->kind) {
        case SeriesExpr::Kind::rational: return std::make_unique<RationalCursor>(node);
        case SeriesExpr::Kind::oracle: return std::make_unique<OracleCursor>(node);
        case SeriesExpr::Kind::hadamard: return std::make_unique<HadamardCursor>(node);
        case SeriesExpr::Kind::conjugate: return std::make_unique<ConjugateCursor>(node);
        case SeriesExpr::Kind::abs_square: return std::make_unique<AbsSquareCursor>(node);
        case SeriesExpr::Kind::line_spec: return std::make_unique<LineSpecCursor>(node);
        case SeriesExpr::Kind::affine_sub: return std::make_unique<AffineSubCursor>(node);
    }
    throw Error("internal", "unknown series node kind");
}

}  // namespace

std::unique_ptr<ShellCursor> make_shell_cursor(const SeriesExpr& f) {
    return make_cursor(f.node_);
}

CoeffTable expand(const SeriesExpr& f, int N) {
    if (N < 0) throw Error("internal", "expansion degree must be non-negative");
    CoeffTable table;
    table.m = f.arity();
    table.N = N;
    auto cursor = make_shell_cursor(f);
    for (int d = 0; d <= N; ++d)
        for (auto& [n, c] : cursor->next()) table.values.emplace(std::move(n), std::move(c));
    return table;
}

}  // namespace pclab
