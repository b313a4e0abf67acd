#include "ornament/feasibility.hpp"

#include <algorithm>
#include <map>

namespace ornament {

void LinearSystem::add_equality(Vector coeffs, Scalar rhs) {
  if (coeffs.size() != variables) throw DimensionError("LinearSystem: equality width mismatch");
  equalities.push_back({std::move(coeffs), std::move(rhs)});
}

void LinearSystem::add_upper(Vector coeffs, Scalar rhs) {
  if (coeffs.size() != variables) throw DimensionError("LinearSystem: inequality width mismatch");
  upper.push_back({std::move(coeffs), std::move(rhs)});
}

void LinearSystem::add_nonnegative(std::size_t var) {
  Vector c = zeros(variables);
  c.at(var) = -1;
  add_upper(std::move(c), 0);
}

EchelonForm reduce(const Matrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw DimensionError("reduce: right-hand side length mismatch");
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  Matrix m(rows, cols + 1);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = a(r, c);
    m(r, cols) = b[r];
  }

  EchelonForm out;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols && lead < rows; ++c) {
    std::size_t p = lead;
    while (p < rows && sgn(m(p, c)) == 0) ++p;
    if (p == rows) continue;
    if (p != lead)
      for (std::size_t j = 0; j <= cols; ++j) std::swap(m(p, j), m(lead, j));
    const Scalar inv = 1 / m(lead, c);
    for (std::size_t j = c; j <= cols; ++j) m(lead, j) *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == lead || sgn(m(r, c)) == 0) continue;
      const Scalar f = m(r, c);
      for (std::size_t j = c; j <= cols; ++j) m(r, j) -= f * m(lead, j);
    }
    out.pivots.push_back(c);
    ++lead;
  }
  for (std::size_t r = lead; r < rows; ++r) {
    if (sgn(m(r, cols)) != 0) out.consistent = false;
  }
  out.reduced = Matrix(lead, cols + 1);
  for (std::size_t r = 0; r < lead; ++r)
    for (std::size_t j = 0; j <= cols; ++j) out.reduced(r, j) = m(r, j);
  return out;
}

namespace {

struct Row {
  Vector coeffs;
  Scalar rhs;
};

struct VectorLess {
  bool operator()(const Vector& a, const Vector& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

// Scales each row so its first nonzero coefficient has magnitude 1, keeps the
// tightest right-hand side among parallel rows, and drops rows with no
// variables. Returns false if some variable-free row reads 0 <= negative.
bool normalize(std::vector<Row>& rows) {
  std::map<Vector, Scalar, VectorLess> tightest;
  for (auto& row : rows) {
    auto first = std::find_if(row.coeffs.begin(), row.coeffs.end(), [](const Scalar& x) { return sgn(x) != 0; });
    if (first == row.coeffs.end()) {
      if (sgn(row.rhs) < 0) return false;
      continue;
    }
    const Scalar f = abs(*first);
    if (f != 1) {
      for (auto& c : row.coeffs) c /= f;
      row.rhs /= f;
    }
    auto [it, inserted] = tightest.try_emplace(std::move(row.coeffs), row.rhs);
    if (!inserted && row.rhs < it->second) it->second = row.rhs;
  }
  rows.clear();
  rows.reserve(tightest.size());
  for (auto& [coeffs, rhs] : tightest) rows.push_back({coeffs, rhs});
  return true;
}

struct Stage {
  std::size_t var;
  std::vector<Row> rows;
};

std::optional<Vector> fourier_motzkin(std::vector<Row> rows, std::size_t vars) {
  if (!normalize(rows)) return std::nullopt;
  std::vector<bool> remaining(vars, true);
  std::vector<Stage> stages;
  for (std::size_t step = 0; step < vars; ++step) {
    // Eliminate the variable producing the fewest new rows.
    std::size_t best = vars;
    std::size_t best_cost = 0;
    for (std::size_t v = 0; v < vars; ++v) {
      if (!remaining[v]) continue;
      std::size_t pos = 0, neg = 0;
      for (const auto& r : rows) {
        const int s = sgn(r.coeffs[v]);
        pos += s > 0;
        neg += s < 0;
      }
      const std::size_t cost = pos * neg;
      if (best == vars || cost < best_cost) {
        best = v;
        best_cost = cost;
      }
    }
    remaining[best] = false;

    std::vector<Row> next;
    std::vector<const Row*> pos, neg;
    for (const auto& r : rows) {
      const int s = sgn(r.coeffs[best]);
      if (s > 0) pos.push_back(&r);
      else if (s < 0) neg.push_back(&r);
      else next.push_back(r);
    }
    for (const Row* p : pos) {
      for (const Row* q : neg) {
        const Scalar wp = -q->coeffs[best];  // > 0
        const Scalar wq = p->coeffs[best];   // > 0
        Row combined{Vector(vars), wp * p->rhs + wq * q->rhs};
        for (std::size_t j = 0; j < vars; ++j) combined.coeffs[j] = wp * p->coeffs[j] + wq * q->coeffs[j];
        combined.coeffs[best] = 0;
        next.push_back(std::move(combined));
      }
    }
    stages.push_back({best, std::move(rows)});
    rows = std::move(next);
    if (!normalize(rows)) return std::nullopt;
  }

  Vector y = zeros(vars);
  for (auto stage = stages.rbegin(); stage != stages.rend(); ++stage) {
    const std::size_t v = stage->var;
    std::optional<Scalar> lo, hi;
    for (const auto& r : stage->rows) {
      const int s = sgn(r.coeffs[v]);
      if (s == 0) continue;
      Scalar rest = r.rhs;
      for (std::size_t j = 0; j < vars; ++j)
        if (j != v) rest -= r.coeffs[j] * y[j];
      Scalar bound = rest / r.coeffs[v];
      if (s > 0) {
        if (!hi || bound < *hi) hi = bound;
      } else {
        if (!lo || bound > *lo) lo = bound;
      }
    }
    if (lo && hi) y[v] = (*lo + *hi) / 2;
    else if (lo) y[v] = *lo;
    else if (hi) y[v] = *hi;
    else y[v] = 0;
  }
  return y;
}

}  // namespace

std::optional<Vector> find_feasible_point(const LinearSystem& system) {
  const std::size_t n = system.variables;
  Vector x0 = zeros(n);
  std::vector<std::size_t> free_vars;
  Matrix basis;  // n x free

  if (system.equalities.empty()) {
    basis = Matrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) free_vars.push_back(i);
  } else {
    Matrix a(system.equalities.size(), n);
    Vector b(system.equalities.size());
    for (std::size_t r = 0; r < system.equalities.size(); ++r) {
      for (std::size_t c = 0; c < n; ++c) a(r, c) = system.equalities[r].coeffs[c];
      b[r] = system.equalities[r].rhs;
    }
    const EchelonForm ef = reduce(a, b);
    if (!ef.consistent) return std::nullopt;
    std::vector<bool> is_pivot(n, false);
    for (auto p : ef.pivots) is_pivot[p] = true;
    for (std::size_t c = 0; c < n; ++c)
      if (!is_pivot[c]) free_vars.push_back(c);
    basis = Matrix(n, free_vars.size());
    for (std::size_t r = 0; r < ef.pivots.size(); ++r) {
      const std::size_t p = ef.pivots[r];
      x0[p] = ef.reduced(r, n);
      for (std::size_t f = 0; f < free_vars.size(); ++f) basis(p, f) = -ef.reduced(r, free_vars[f]);
    }
    for (std::size_t f = 0; f < free_vars.size(); ++f) basis(free_vars[f], f) = 1;
  }

  const std::size_t nfree = free_vars.size();
  std::vector<Row> rows;
  rows.reserve(system.upper.size());
  for (const auto& c : system.upper) {
    Row r{Vector(nfree), c.rhs - dot(c.coeffs, x0)};
    for (std::size_t f = 0; f < nfree; ++f) {
      Scalar acc = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(c.coeffs[j]) != 0) acc += c.coeffs[j] * basis(j, f);
      r.coeffs[f] = acc;
    }
    rows.push_back(std::move(r));
  }

  auto y = fourier_motzkin(std::move(rows), nfree);
  if (!y) return std::nullopt;
  return add(x0, basis * *y);
}

}  // namespace ornament
