#ifndef PCLAB_SERIES_HPP
#define PCLAB_SERIES_HPP

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pclab/multipoly.hpp"

namespace pclab {

struct CoeffTable {
    int m = 1;
    int N = 0;
    std::map<MultiIndex, CycloElement, GrlexLess> values;  // complete on |n| <= N, zeros absent

    CycloElement at(const MultiIndex& n) const {
        auto it = values.find(n);
        return it == values.end() ? CycloElement() : it->second;
    }
    bool operator==(const CoeffTable& other) const {
        return m == other.m && N == other.N && values == other.values;
    }
};

/// Immutable source/combinator DAG describing a multivariate power series.
class SeriesExpr {
   public:
    enum class Kind { rational, oracle, hadamard, conjugate, abs_square, line_spec, affine_sub };

    /// A(x)/B(x) with B(0) != 0.
    static SeriesExpr rational(MultiPoly num, MultiPoly den);
    /// log(1 + x^k): the coefficient of x^{jk} is (-1)^{j+1}/j.
    static SeriesExpr log1p(unsigned long k);
    /// sum x^n / n!
    static SeriesExpr expseries();
    /// sum_n x^n y^{n!} (bivariate)
    static SeriesExpr gapfact();
    /// Named coefficient oracle, for registering new sources programmatically.
    static SeriesExpr custom_oracle(int m, std::string name,
                                    std::function<CycloElement(const MultiIndex&)> fn);

    int arity() const;
    Kind kind() const;
    const std::string& oracle_name() const;
    unsigned long oracle_param() const;
    const MultiPoly& num() const;
    const MultiPoly& den() const;
    SeriesExpr child(int i = 0) const;  // hadamard: 0/1; unary nodes: 0
    const std::vector<CycloElement>& weights() const;  // betas / alphas

    friend SeriesExpr hadamard(const SeriesExpr& f, const SeriesExpr& g);
    friend SeriesExpr conjugate_series(const SeriesExpr& f);
    friend SeriesExpr abs_square(const SeriesExpr& f);
    friend SeriesExpr line_specialize(const SeriesExpr& f, std::vector<CycloElement> betas);
    friend SeriesExpr affine_substitute(const SeriesExpr& f, std::vector<CycloElement> alphas);

    struct Node;  // implementation detail, defined in series.cpp

   private:
    explicit SeriesExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
    friend std::unique_ptr<class ShellCursor> make_shell_cursor(const SeriesExpr&);
};

SeriesExpr hadamard(const SeriesExpr& f, const SeriesExpr& g);
SeriesExpr conjugate_series(const SeriesExpr& f);
SeriesExpr abs_square(const SeriesExpr& f);
SeriesExpr line_specialize(const SeriesExpr& f, std::vector<CycloElement> betas);
SeriesExpr affine_substitute(const SeriesExpr& f, std::vector<CycloElement> alphas);

/// Streaming expansion: the k-th call to next() yields the nonzero coefficients
/// on the shell of total degree k, in deterministic index order.
class ShellCursor {
   public:
    virtual ~ShellCursor() = default;
    virtual std::vector<std::pair<MultiIndex, CycloElement>> next() = 0;
    virtual int arity() const = 0;
};

std::unique_ptr<ShellCursor> make_shell_cursor(const SeriesExpr& f);

/// Exact coefficients for all |n| <= N.
CoeffTable expand(const SeriesExpr& f, int N);

/// Enumerates the multi-indices of total degree d in m variables, lex order.
std::vector<MultiIndex> shell_indices(int m, int d);

}  // namespace pclab

#endif
