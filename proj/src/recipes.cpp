#include "bandgrowth/recipes.hpp"

#include <algorithm>
#include <bit>

namespace bandgrowth {

std::size_t Combination::length() const {
  std::size_t m = 0;
  for (const auto& t : terms) m = std::max(m, t.word.size());
  return m;
}

std::size_t Combination::products() const {
  std::size_t total = 0;
  for (const auto& t : terms) total += t.word.empty() ? 0 : t.word.size() - 1;
  return total;
}

std::string to_string(const Word& w) {
  std::string s;
  for (const auto& g : w) {
    if (!s.empty()) s += ' ';
    s += g;
  }
  return s.empty() ? "1" : s;
}

WordEvaluator::WordEvaluator(const GeneratorSet& gs, std::size_t window) : field_(gs.field()), window_(window) {
  for (const auto& g : gs.generators()) gens_.emplace(g.name, make_window(g.matrix, window));
}

const WindowMatrix& WordEvaluator::generator(const std::string& name) const {
  auto it = gens_.find(name);
  if (it == gens_.end()) throw Error(ErrorKind::RecipeNotFound, "no generator named '" + name + "'");
  return it->second;
}

WindowMatrix WordEvaluator::word(const Word& w) {
  if (w.empty()) return WindowMatrix::identity(field_, window_);
  WindowMatrix acc = generator(w.front());
  for (std::size_t i = 1; i < w.size(); ++i) acc = mul(acc, generator(w[i]));
  return acc;
}

const WindowMatrix& WordEvaluator::cached(const Word& w) {
  const std::string key = to_string(w);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  if (cache_.size() > 4096) cache_.clear();
  return cache_.emplace(key, word(w)).first->second;
}

WindowMatrix WordEvaluator::eval(const Combination& c) {
  WindowMatrix sum(field_, window_);
  for (const auto& t : c.terms) {
    WindowMatrix w = field_.zero() == t.coeff ? WindowMatrix(field_, window_) : [&] {
      if (t.split == 0 || t.split >= t.word.size()) return word(t.word);
      const Word left(t.word.begin(), t.word.begin() + static_cast<std::ptrdiff_t>(t.split));
      const Word right(t.word.begin() + static_cast<std::ptrdiff_t>(t.split), t.word.end());
      return mul(cached(left), cached(right));
    }();
    sum = add(sum, scale(t.coeff, w));
  }
  return sum;
}

namespace {

Word repeat(const std::string& g, std::size_t n) { return Word(n, g); }

void append(Word& w, const Word& more) { w.insert(w.end(), more.begin(), more.end()); }

// Row walk e_1^T -> e_j^T inside a block: u adds one, B doubles (0-based).
Word address(std::size_t j) {
  Word w;
  const std::size_t x = j - 1;
  if (x == 0) return w;
  const int top = std::bit_width(x) - 1;
  w.push_back("u");
  for (int b = top - 1; b >= 0; --b) {
    w.push_back("B");
    if ((x >> b) & 1) w.push_back("u");
  }
  return w;
}

Word transposed(const Word& w) {
  Word t;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (*it == "u") t.push_back("u_bar");
    else if (*it == "u_bar") t.push_back("u");
    else if (*it == "B") t.push_back("B_bar");
    else if (*it == "B_bar") t.push_back("B");
    else if (*it == "s") t.push_back("s_bar");
    else if (*it == "s_bar") t.push_back("s");
    else t.push_back(*it);
  }
  return t;
}

// Diagonal marker of the starts of blocks of size >= 2^a.
Word size_filter(std::size_t a) {
  Word w{"q"};
  if (a == 0) return w;
  w.push_back("u");
  append(w, repeat("B", a - 1));
  append(w, repeat("B_bar", a - 1));
  w.push_back("u_bar");
  return w;
}

// Keeps row 1 of the blocks whose h-code equals idx.
Word code_walk(std::size_t idx, std::size_t bits) {
  Word w;
  std::size_t at = 1;
  for (std::size_t j = 0; j < bits; ++j) {
    const std::size_t p = ((idx >> j) & 1) ? 2 * j + 1 : 2 * j + 2;
    append(w, repeat("u", p - at));
    w.push_back("h");
    at = p;
  }
  append(w, repeat("u_bar", at - 1));
  return w;
}

}  // namespace

std::size_t recipe_window(const GeneratorSet& gs, std::size_t k) {
  const BlockStructure& bs = gs.structure();
  bs.require_block(k + 3);
  std::size_t n = bs.end(k + 3);
  if (!gs.addressable(k)) n += 2 * bs.end(k);
  return n;
}

MatrixUnitRecipe matrix_unit_recipe(const GeneratorSet& gs, std::size_t k, std::size_t i, std::size_t j) {
  const BlockStructure& bs = gs.structure();
  bs.require_block(k + 1);
  const std::size_t n = bs.size(k);
  if (i < 1 || j < 1 || i > n || j > n) {
    throw Error(ErrorKind::OutOfRange, "unit (" + std::to_string(i) + "," + std::to_string(j) + ") outside block " +
                                           std::to_string(k) + " of size " + std::to_string(n));
  }
  const Field& f = gs.field();
  const UnitTarget target{bs.start(k) + i - 1, bs.start(k) + j - 1};
  Combination c;
  std::string route;
  if (gs.addressable(k)) {
    const std::size_t a = bs.size_class(k);
    const Word left_addr = transposed(address(i));
    const Word right_addr = address(j);
    const Word walk = code_walk(gs.code_index(k), gs.code_bits(k));
    for (std::size_t level : {a, a + 1}) {
      Word w = left_addr;
      append(w, size_filter(level));
      append(w, walk);
      const std::size_t split = w.size();
      append(w, right_addr);
      c.terms.push_back({level == a ? f.one() : -f.one(), std::move(w), split});
    }
    route = "addressed";
  } else {
    // e_{PQ} = s_bar^{P-1} s^{Q-1} - s_bar^P s^Q.
    const std::size_t P = target.row, Q = target.col;
    Word w1 = repeat("s_bar", P - 1);
    append(w1, repeat("s", Q - 1));
    Word w2 = repeat("s_bar", P);
    append(w2, repeat("s", Q));
    c.terms.push_back({f.one(), std::move(w1), P - 1});
    c.terms.push_back({-f.one(), std::move(w2), P});
    route = "global";
  }
  const std::size_t len = c.length();
  return MatrixUnitRecipe{k, i, j, std::move(c), len, std::move(route), target};
}

bool verify_unit(WordEvaluator& ev, const Combination& c, UnitTarget target, std::size_t need_valid) {
  const WindowMatrix w = ev.eval(c);
  if (w.valid_to() < need_valid) {
    throw Error(ErrorKind::WindowExhausted, "valid region ends at " + std::to_string(w.valid_to()) + ", need " +
                                                std::to_string(need_valid));
  }
  const WindowMatrix unit = WindowMatrix::unit(w.field(), w.size(), target.row, target.col);
  return w.equal_on(unit, w.valid_to());
}

CrossElement cross_element(const GeneratorSet& gs, std::size_t k) {
  const std::size_t n = gs.structure().size(k);
  auto with_suffix = [](Combination c, const std::string& g) {
    for (auto& t : c.terms) t.word.push_back(g);
    return c;
  };
  auto with_prefix = [](Combination c, const std::string& g) {
    for (auto& t : c.terms) {
      // Apply the prefix last: it costs one position of the valid region,
      // whereas folding it in first would cost a block per later factor.
      t.word.insert(t.word.begin(), g);
      t.split = 1;
    }
    return c;
  };
  // gamma' = e_{start(k), end(k)} s,  gamma = s_bar e_{end(k), start(k)}.
  Combination gp = with_suffix(matrix_unit_recipe(gs, k, 1, n).combination, "s");
  Combination g = with_prefix(matrix_unit_recipe(gs, k, n, 1).combination, "s_bar");
  const std::size_t len = std::max(g.length(), gp.length());
  return CrossElement{k, std::move(g), std::move(gp), len};
}

CrossCheck verify_cross(WordEvaluator& ev, const GeneratorSet& gs, const CrossElement& ce) {
  const BlockStructure& bs = gs.structure();
  const std::size_t a = bs.start(ce.k), b = bs.start(ce.k + 1);
  const std::size_t need = bs.end(ce.k + 1);
  CrossCheck out;
  const WindowMatrix g = ev.eval(ce.gamma);
  const WindowMatrix gp = ev.eval(ce.gamma_prime);
  if (std::min(g.valid_to(), gp.valid_to()) < need) {
    throw Error(ErrorKind::WindowExhausted, "cross element for block " + std::to_string(ce.k) + " needs a larger window");
  }
  const Field& f = ev.generator("s").field();
  const std::size_t n = ev.window();
  out.gamma_exact = g.equal_on(WindowMatrix::unit(f, n, b, a), g.valid_to());
  out.gamma_prime_exact = gp.equal_on(WindowMatrix::unit(f, n, a, b), gp.valid_to());
  const WindowMatrix left = mul(gp, g);
  const WindowMatrix right = mul(g, gp);
  out.left_product = left.valid_to() >= need && left.equal_on(WindowMatrix::unit(f, n, a, a), left.valid_to());
  out.right_product = right.valid_to() >= need && right.equal_on(WindowMatrix::unit(f, n, b, b), right.valid_to());
  return out;
}

IdempotentFamily idempotent_family(const BlockStructure& bs, std::size_t k) {
  bs.require_block(k);
  IdempotentFamily fam{k, {}};
  for (std::size_t i = 0; i < bs.size(k); ++i) fam.positions.push_back(bs.start(k) + i);
  return fam;
}

}  // namespace bandgrowth
