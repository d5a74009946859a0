#include "fmlab/eval.hpp"

#include <optional>
#include <unordered_map>

#include "fmlab/errors.hpp"

namespace fmlab {

namespace {

// Binding stack with shadowing; quantifier depth stays tiny so linear
// lookup from the innermost binding wins over any map.
class Env {
 public:
  explicit Env(const Assignment& base) {
    for (const auto& [name, value] : base) bindings_.emplace_back(name, value);
  }

  Elem lookup(const std::string& name) const {
    for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it) {
      if (it->first == name) return it->second;
    }
    throw InputError("unbound free variable " + name);
  }

  void push(const std::string& name, Elem value) {
    bindings_.emplace_back(name, value);
  }
  void pop() { bindings_.pop_back(); }

 private:
  std::vector<std::pair<std::string, Elem>> bindings_;
};

struct MemoKey {
  const Formula* node;
  std::vector<Elem> values;

  bool operator==(const MemoKey&) const = default;
};

struct MemoKeyHash {
  std::size_t operator()(const MemoKey& k) const {
    std::size_t h = std::hash<const void*>{}(k.node);
    for (Elem v : k.values) {
      h = h * 1000003u + static_cast<std::size_t>(v) + 0x9e3779b9u;
    }
    return h;
  }
};

constexpr std::size_t kMemoFreeVarLimit = 3;

class Evaluator {
 public:
  Evaluator(const Structure& s, std::optional<bool> p_value)
      : s_(s), p_value_(p_value) {}

  bool eval(const Formula& f, Env& env) {
    switch (f.kind) {
      case FormulaKind::Atom: {
        const auto& tuples = s_.relation(f.symbol);
        if (static_cast<int>(f.args.size()) != s_.signature().arity(f.symbol)) {
          throw InputError("atom " + f.symbol +
                           " does not match the structure's signature");
        }
        Tuple t(f.args.size());
        for (std::size_t i = 0; i < f.args.size(); ++i) {
          t[i] = env.lookup(f.args[i]);
        }
        return tuples.count(t) > 0;
      }
      case FormulaKind::Equal:
        return env.lookup(f.args[0]) == env.lookup(f.args[1]);
      case FormulaKind::PAtom:
        if (!p_value_) {
          throw InputError("formula contains P; use evaluate_with_p");
        }
        return *p_value_;
      case FormulaKind::Not:
        return !eval(*f.left, env);
      case FormulaKind::And:
        return eval(*f.left, env) && eval(*f.right, env);
      case FormulaKind::Or:
        return eval(*f.left, env) || eval(*f.right, env);
      case FormulaKind::Implies:
        return !eval(*f.left, env) || eval(*f.right, env);
      case FormulaKind::Iff:
        return eval(*f.left, env) == eval(*f.right, env);
      case FormulaKind::Exists:
      case FormulaKind::Forall:
        return eval_quantifier(f, env);
    }
    throw InputError("corrupt formula node");
  }

 private:
  bool eval_quantifier(const Formula& f, Env& env) {
    const std::vector<std::string>& free = free_vars_of(f);
    MemoKey key;
    bool use_memo = free.size() <= kMemoFreeVarLimit;
    if (use_memo) {
      key.node = &f;
      key.values.reserve(free.size());
      for (const std::string& v : free) key.values.push_back(env.lookup(v));
      auto hit = memo_.find(key);
      if (hit != memo_.end()) return hit->second;
    }
    bool universal = f.kind == FormulaKind::Forall;
    bool result = universal;
    for (Elem a = 0; a < s_.size(); ++a) {
      env.push(f.symbol, a);
      bool inner = eval(*f.left, env);
      env.pop();
      if (inner != universal) {
        result = !universal;
        break;
      }
    }
    if (use_memo) memo_.emplace(std::move(key), result);
    return result;
  }

  const std::vector<std::string>& free_vars_of(const Formula& f) {
    auto it = free_cache_.find(&f);
    if (it != free_cache_.end()) return it->second;
    auto set = free_variables(f);
    return free_cache_
        .emplace(&f, std::vector<std::string>(set.begin(), set.end()))
        .first->second;
  }

  const Structure& s_;
  std::optional<bool> p_value_;
  std::unordered_map<const Formula*, std::vector<std::string>> free_cache_;
  std::unordered_map<MemoKey, bool, MemoKeyHash> memo_;
};

}  // namespace

bool evaluate(const Structure& s, const Formula& f, const Assignment& a) {
  if (contains_p_atom(f)) {
    throw InputError("formula contains P; use evaluate_with_p");
  }
  for (const std::string& v : free_variables(f)) {
    auto it = a.find(v);
    if (it == a.end()) throw InputError("unbound free variable " + v);
    if (it->second < 0 || it->second >= s.size()) {
      throw InputError("assignment maps " + v + " outside the universe");
    }
  }
  Env env(a);
  return Evaluator(s, std::nullopt).eval(f, env);
}

bool evaluate_with_p(const Structure& s, const Formula& f, bool p_value) {
  if (!is_sentence(f)) {
    throw InputError("evaluate_with_p expects a sentence");
  }
  Assignment empty;
  Env env(empty);
  return Evaluator(s, p_value).eval(f, env);
}

}  // namespace fmlab
