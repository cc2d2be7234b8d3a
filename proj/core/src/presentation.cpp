#include "koszulkit/presentation.hpp"

#include <algorithm>
#include <stdexcept>

namespace kk::alg {

namespace {

void require_single_grading(const GradedAlgebra& a, int d_max, const char* who) {
  if (a.grade_length() != 1) throw std::invalid_argument(std::string(who) + ": needs a single grading");
  if (d_max > a.trusted_bound()[0]) {
    throw std::out_of_range(std::string(who) + ": degree " + std::to_string(d_max) + " exceeds the trusted bound " +
                            std::to_string(a.trusted_bound()[0]));
  }
}

Element multiply(const GradedAlgebra& a, const Element& x, const Element& y) {
  Element out;
  if (x.is_zero() || y.is_zero()) return out;
  out.piece = a.multiply(x.piece, x.coords, y.piece, y.coords, out.coords);
  if (out.piece < 0) out.coords.clear();
  return out;
}

// Words of each degree 0..d_max, sorted largest first under the order.
std::vector<std::vector<nc::Word>> words_by_degree(const nc::VariableOrder& order, int d_max) {
  std::vector<std::vector<nc::Word>> words(static_cast<std::size_t>(d_max + 1));
  words[0].push_back({});
  for (int d = 1; d <= d_max; ++d) {
    auto& out = words[static_cast<std::size_t>(d)];
    for (int g = 0; g < order.size(); ++g) {
      int e = order.degree(g);
      if (e < 1) throw std::invalid_argument("present: generators need positive degree");
      if (e > d) continue;
      for (const auto& w : words[static_cast<std::size_t>(d - e)]) {
        nc::Word nw = w;
        nw.push_back(g);
        out.push_back(std::move(nw));
      }
    }
    std::sort(out.begin(), out.end(), [&](const nc::Word& x, const nc::Word& y) { return nc::deglex_compare(x, y, order) > 0; });
  }
  return words;
}

std::map<nc::Word, int> index_words(const std::vector<nc::Word>& ws) {
  std::map<nc::Word, int> idx;
  for (std::size_t k = 0; k < ws.size(); ++k) idx.emplace(ws[k], static_cast<int>(k));
  return idx;
}

nc::NCPolynomial to_polynomial(const la::Field& f, const la::SparseVec& v, const std::vector<nc::Word>& ws) {
  nc::NCPolynomial p;
  for (const auto& e : v) p.add_term(f, ws[static_cast<std::size_t>(e.index)], e.value);
  return p;
}

la::SparseVec to_vector(const la::Field& f, const nc::NCPolynomial& p, const std::map<nc::Word, int>& idx) {
  std::vector<la::Entry> raw;
  for (const auto& [w, c] : p.terms()) raw.push_back({idx.at(w), c});
  return la::collect(f, std::move(raw));
}

// Gauss-Jordan among vectors whose lowest indices are distinct pivots.
void interreduce(const la::Field& f, std::vector<la::SparseVec>& vs) {
  std::sort(vs.begin(), vs.end(), [](const la::SparseVec& x, const la::SparseVec& y) { return x.front().index < y.front().index; });
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = 0; j < vs.size(); ++j) {
      if (i == j) continue;
      la::Rational c = la::value_at(vs[i], vs[j].front().index);
      if (!c.is_zero()) vs[i] = la::axpy(f, vs[i], f.neg(c), vs[j]);
    }
  }
}

}  // namespace

std::vector<std::string> NCPresentation::names() const {
  std::vector<std::string> out;
  for (const auto& g : generators) out.push_back(g.name);
  return out;
}

std::vector<std::vector<Generator>> minimal_generators(const GradedAlgebra& a, int d_max) {
  require_single_grading(a, d_max, "minimal_generators");
  std::vector<std::vector<Generator>> out(static_cast<std::size_t>(d_max + 1));
  for (int p = 0; p < a.piece_count(); ++p) {
    const Piece& pc = a.piece(p);
    int d = pc.grade[0];
    if (d > d_max) continue;
    la::EchelonBasis dec(a.field());
    for (int x = 0; x < a.piece_count(); ++x) {
      for (int y = 0; y < a.piece_count(); ++y) {
        const auto* blk = a.product(x, y);
        if (!blk || blk->target != p) continue;
        for (const auto& v : blk->table) {
          if (!v.empty()) dec.insert(v, -1);
        }
      }
    }
    for (int k = 0; k < pc.dim && dec.size() < pc.dim; ++k) {
      la::SparseVec e{{k, la::Rational(1)}};
      if (dec.insert(e, k) >= 0) {
        std::string label = k < static_cast<int>(pc.labels.size()) ? pc.labels[static_cast<std::size_t>(k)] : "g";
        out[static_cast<std::size_t>(d)].push_back(Generator{label, d, Element{p, e}});
      }
    }
  }
  return out;
}

Element evaluate_word(const GradedAlgebra& a, const std::vector<Generator>& gens, const nc::Word& w) {
  if (w.empty()) throw std::invalid_argument("evaluate_word: the empty word is the unit, not in m");
  Element v = gens.at(static_cast<std::size_t>(w[0])).value;
  for (std::size_t k = 1; k < w.size() && !v.is_zero(); ++k) v = multiply(a, v, gens.at(static_cast<std::size_t>(w[k])).value);
  return v;
}

std::map<int, la::SparseVec> evaluate(const GradedAlgebra& a, const std::vector<Generator>& gens, const nc::NCPolynomial& p) {
  std::map<int, la::SparseVec> out;
  for (const auto& [w, c] : p.terms()) {
    Element v = evaluate_word(a, gens, w);
    if (v.is_zero()) continue;
    auto& acc = out[v.piece];
    acc = la::axpy(a.field(), acc, c, v.coords);
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.empty()) it = out.erase(it);
    else ++it;
  }
  return out;
}

NCPresentation present(const GradedAlgebra& a, int d_max) {
  require_single_grading(a, d_max, "present");
  std::vector<Generator> gens;
  std::vector<int> degrees;
  for (auto& level : minimal_generators(a, d_max)) {
    for (auto& g : level) {
      degrees.push_back(g.degree);
      gens.push_back(std::move(g));
    }
  }
  nc::VariableOrder order(degrees);
  return present(a, std::move(gens), std::move(order), d_max);
}

NCPresentation present(const GradedAlgebra& a, std::vector<Generator> gens, nc::VariableOrder order, int d_max) {
  require_single_grading(a, d_max, "present");
  if (order.size() != static_cast<int>(gens.size())) throw std::invalid_argument("present: order/generator count mismatch");
  const la::Field& f = a.field();
  NCPresentation out;
  out.d_max = d_max;

  auto words = words_by_degree(order, d_max);
  std::vector<std::map<nc::Word, int>> index;
  for (const auto& ws : words) index.push_back(index_words(ws));
  std::vector<std::vector<la::SparseVec>> kernel(static_cast<std::size_t>(d_max + 1));

  for (int d = 1; d <= d_max; ++d) {
    const auto& ws = words[static_cast<std::size_t>(d)];
    const auto& idx = index[static_cast<std::size_t>(d)];
    auto& ker = kernel[static_cast<std::size_t>(d)];

    // Kernel of word evaluation, split by the piece the words land in.
    std::map<int, std::vector<int>> by_piece;
    std::vector<Element> vals(ws.size());
    for (std::size_t k = 0; k < ws.size(); ++k) {
      vals[k] = evaluate_word(a, gens, ws[k]);
      if (vals[k].is_zero()) ker.push_back({{static_cast<int>(k), la::Rational(1)}});
      else by_piece[vals[k].piece].push_back(static_cast<int>(k));
    }
    for (const auto& [piece, cols] : by_piece) {
      la::Matrix m(a.piece(piece).dim, static_cast<int>(cols.size()));
      for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(static_cast<int>(c), vals[static_cast<std::size_t>(cols[c])].coords);
      for (const auto& kv : la::rank_kernel(f, m).kernel) {
        std::vector<la::Entry> raw;
        for (const auto& e : kv) raw.push_back({cols[static_cast<std::size_t>(e.index)], e.value});
        ker.push_back(la::collect(f, std::move(raw)));
      }
    }

    // Consequences of lower relations: g*r and r*g.
    la::EchelonBasis span(f);
    for (int g = 0; g < order.size(); ++g) {
      int e = order.degree(g);
      if (e >= d) continue;
      const auto& lower_words = words[static_cast<std::size_t>(d - e)];
      for (const auto& r : kernel[static_cast<std::size_t>(d - e)]) {
        nc::NCPolynomial pr = to_polynomial(f, r, lower_words);
        la::Rational one(1);
        span.insert(to_vector(f, pr.sandwich(f, {g}, {}, one), idx), -1);
        span.insert(to_vector(f, pr.sandwich(f, {}, {g}, one), idx), -1);
      }
    }
    std::vector<la::SparseVec> fresh;
    for (const auto& r : ker) {
      int id = span.insert(r, 1);
      if (id >= 0) fresh.push_back(span.pivot(id));
    }
    interreduce(f, fresh);
    for (const auto& r : fresh) out.relations.push_back(to_polynomial(f, r, ws));
  }
  out.generators = std::move(gens);
  out.order = std::move(order);
  return out;
}

std::vector<long long> quotient_dims(const la::Field& f, const nc::VariableOrder& order,
                                     const std::vector<nc::NCPolynomial>& relations, int d_max) {
  auto words = words_by_degree(order, d_max);
  std::vector<long long> dims(static_cast<std::size_t>(d_max + 1), 0);
  dims[0] = 1;
  for (int d = 1; d <= d_max; ++d) {
    const auto& ws = words[static_cast<std::size_t>(d)];
    auto idx = index_words(ws);
    std::vector<la::SparseVec> rows;
    for (const auto& r : relations) {
      int e = r.degree(order);
      if (e > d) continue;
      for (int left = 0; left <= d - e; ++left) {
        for (const auto& u : words[static_cast<std::size_t>(left)]) {
          for (const auto& v : words[static_cast<std::size_t>(d - e - left)]) {
            rows.push_back(to_vector(f, r.sandwich(f, u, v, la::Rational(1)), idx));
          }
        }
      }
    }
    dims[static_cast<std::size_t>(d)] = static_cast<long long>(ws.size()) - la::rank_of_rows(f, std::move(rows), static_cast<int>(ws.size()));
  }
  return dims;
}

}  // namespace kk::alg
