#include "haarconv/group.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <set>

#include "haarconv/error.hpp"

namespace haarconv {

FiniteGroup::FiniteGroup(std::string name, std::vector<std::vector<Element>> table,
                         std::vector<std::string> labels)
    : name_(std::move(name)), order_(table.size()) {
  const std::size_t n = order_;
  if (n == 0) throw StructureError("group table is empty");
  table_.reserve(n * n);
  for (const auto& row : table) {
    if (row.size() != n) throw StructureError("group table is not square");
    for (Element v : row) {
      if (v >= n) throw StructureError("group table entry out of range");
      table_.push_back(v);
    }
  }

  // Latin square: every row and column is a permutation.
  std::vector<char> seen(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (seen[table_[i * n + j]]++) throw StructureError("group table row is not a permutation");
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (seen[table_[j * n + i]]++) throw StructureError("group table column is not a permutation");
    }
  }

  bool found = false;
  for (Element e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (Element g = 0; g < n && ok; ++g) ok = multiply(e, g) == g && multiply(g, e) == g;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw StructureError("group table has no identity");

  inverses_.resize(n);
  for (Element g = 0; g < n; ++g) {
    for (Element h = 0; h < n; ++h) {
      if (multiply(g, h) == identity_) {
        if (multiply(h, g) != identity_) throw StructureError("left and right inverses differ");
        inverses_[g] = h;
        break;
      }
    }
  }

  if (n <= kMaxCheckedOrder) {
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) {
        const Element ab = multiply(a, b);
        for (Element c = 0; c < n; ++c)
          if (multiply(ab, c) != multiply(a, multiply(b, c)))
            throw StructureError("group table is not associative");
      }
  }

  if (labels.empty()) {
    labels_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels_.push_back(std::to_string(i));
  } else {
    if (labels.size() != n) throw StructureError("label count does not match group order");
    std::set<std::string> unique(labels.begin(), labels.end());
    if (unique.size() != n) throw StructureError("element labels must be distinct");
    labels_ = std::move(labels);
  }
}

std::optional<Element> FiniteGroup::find(std::string_view label) const {
  for (Element g = 0; g < order_; ++g)
    if (labels_[g] == label) return g;
  if (label == "e") return identity_;
  return std::nullopt;
}

bool FiniteGroup::is_abelian() const {
  for (Element a = 0; a < order_; ++a)
    for (Element b = a + 1; b < order_; ++b)
      if (multiply(a, b) != multiply(b, a)) return false;
  return true;
}

// ---------------------------------------------------------------------------

Subgroup::Subgroup(GroupPtr parent, std::vector<Element> members)
    : parent_(std::move(parent)), members_(std::move(members)) {
  if (!parent_) throw ArgumentError("subgroup needs a parent group");
  const FiniteGroup& g = *parent_;
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (members_.empty()) throw StructureError("subgroup is empty");
  mask_.assign(g.order(), false);
  for (Element m : members_) {
    if (m >= g.order()) throw StructureError("subgroup member out of range");
    mask_[m] = true;
  }
  if (!mask_[g.identity()]) throw StructureError("subgroup does not contain the identity");
  for (Element a : members_) {
    if (!mask_[g.inverse(a)]) throw StructureError("subgroup is not closed under inverses");
    for (Element b : members_)
      if (!mask_[g.multiply(a, b)]) throw StructureError("subgroup is not closed under multiplication");
  }
}

std::string Subgroup::label() const {
  std::string out = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) out += ",";
    out += members_[i] == parent_->identity() ? std::string("e") : parent_->label(members_[i]);
  }
  return out + "}";
}

namespace {

std::vector<Element> closure(const FiniteGroup& g, std::span<const Element> generators) {
  std::vector<char> in(g.order(), 0);
  std::vector<Element> members{g.identity()};
  in[g.identity()] = 1;
  for (Element x : generators) {
    if (x >= g.order()) throw ArgumentError("generator out of range");
    if (!in[x]) {
      in[x] = 1;
      members.push_back(x);
    }
  }
  // Right-multiply by generators until closed; finite order makes this a subgroup.
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (Element x : generators) {
      const Element y = g.multiply(members[i], x);
      if (!in[y]) {
        in[y] = 1;
        members.push_back(y);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

}  // namespace

Subgroup generated_subgroup(const GroupPtr& group, std::span<const Element> generators) {
  return Subgroup(group, closure(*group, generators));
}

Subgroup trivial_subgroup(const GroupPtr& group) { return Subgroup(group, {group->identity()}); }

Subgroup whole_group(const GroupPtr& group) {
  std::vector<Element> all(group->order());
  std::iota(all.begin(), all.end(), Element{0});
  return Subgroup(group, std::move(all));
}

std::vector<Subgroup> subgroups(const GroupPtr& group) {
  const FiniteGroup& g = *group;
  if (g.order() > FiniteGroup::kMaxCheckedOrder)
    throw UnsupportedError("subgroup enumeration supports orders up to 64");

  std::set<std::vector<Element>> found;
  std::vector<std::vector<Element>> work;
  auto add = [&](std::vector<Element> s) {
    if (found.insert(s).second) work.push_back(std::move(s));
  };
  add({g.identity()});
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = a; b < g.order(); ++b) {
      const Element gens[] = {a, b};
      add(closure(g, gens));
    }
  // Close under joins with single elements.
  while (!work.empty()) {
    std::vector<Element> h = std::move(work.back());
    work.pop_back();
    std::vector<char> in(g.order(), 0);
    for (Element m : h) in[m] = 1;
    for (Element x = 0; x < g.order(); ++x) {
      if (in[x]) continue;
      std::vector<Element> gens = h;
      gens.push_back(x);
      add(closure(g, gens));
    }
  }

  std::vector<std::vector<Element>> sorted(found.begin(), found.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<Subgroup> out;
  out.reserve(sorted.size());
  for (auto& s : sorted) out.emplace_back(group, std::move(s));
  return out;
}

// ---------------------------------------------------------------------------

GroupPtr cyclic_group(std::size_t m) {
  if (m < 1 || m > 64) throw UnsupportedError("built-in cyclic groups have order 1..64");
  std::vector<std::vector<Element>> table(m, std::vector<Element>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) table[i][j] = (i + j) % m;
  return std::make_shared<const FiniteGroup>("Z" + std::to_string(m), std::move(table));
}

GroupPtr dihedral_d4() {
  // s^a r^i has index 4a + i; (s^a r^i)(s^b r^j) = s^(a+b) r^((-1)^b i + j).
  std::vector<std::vector<Element>> table(8, std::vector<Element>(8));
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < 4; ++i)
      for (int b = 0; b < 2; ++b)
        for (int j = 0; j < 4; ++j) {
          const int rot = ((b ? -i : i) + j + 8) % 4;
          table[4 * a + i][4 * b + j] = static_cast<Element>(4 * ((a + b) % 2) + rot);
        }
  return std::make_shared<const FiniteGroup>(
      "D4", std::move(table),
      std::vector<std::string>{"e", "r", "r2", "r3", "s", "sr", "sr2", "sr3"});
}

namespace {

std::string cycle_label(const std::vector<int>& p) {
  const std::size_t n = p.size();
  std::vector<char> done(n, 0);
  std::string out;
  for (std::size_t start = 0; start < n; ++start) {
    if (done[start] || p[start] == static_cast<int>(start)) continue;
    out += "(";
    for (std::size_t i = start; !done[i]; i = static_cast<std::size_t>(p[i])) {
      done[i] = 1;
      out += std::to_string(i + 1);
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

}  // namespace

GroupPtr symmetric_group(int n) {
  if (n != 3 && n != 4) throw UnsupportedError("built-in symmetric groups are S3 and S4");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  auto moved = [](const std::vector<int>& q) {
    int c = 0;
    for (std::size_t i = 0; i < q.size(); ++i) c += q[i] != static_cast<int>(i);
    return c;
  };
  std::stable_sort(perms.begin(), perms.end(), [&](const auto& a, const auto& b) {
    const int ma = moved(a), mb = moved(b);
    if (ma != mb) return ma < mb;
    return cycle_label(a) < cycle_label(b);
  });

  std::map<std::vector<int>, Element> index;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < perms.size(); ++i) {
    index[perms[i]] = i;
    labels.push_back(cycle_label(perms[i]));
  }
  const std::size_t m = perms.size();
  std::vector<std::vector<Element>> table(m, std::vector<Element>(m));
  std::vector<int> gh(static_cast<std::size_t>(n));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      // (gh)(i) = g(h(i))
      for (std::size_t i = 0; i < gh.size(); ++i)
        gh[i] = perms[a][static_cast<std::size_t>(perms[b][i])];
      table[a][b] = index.at(gh);
    }
  return std::make_shared<const FiniteGroup>("S" + std::to_string(n), std::move(table),
                                             std::move(labels));
}

GroupPtr builtin_group(std::string_view name) {
  if (name == "D4") return dihedral_d4();
  if (name == "S3") return symmetric_group(3);
  if (name == "S4") return symmetric_group(4);
  if (name.size() > 1 && name[0] == 'Z') {
    std::size_t m = 0;
    const auto* end = name.data() + name.size();
    auto [ptr, ec] = std::from_chars(name.data() + 1, end, m);
    if (ec == std::errc{} && ptr == end) return cyclic_group(m);
  }
  throw ArgumentError("unknown group '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------

GroupElement::GroupElement(GroupPtr group, Element index) : value_(Finite{std::move(group), index}) {
  const auto& f = std::get<Finite>(value_);
  if (!f.group) throw ArgumentError("group element needs a group");
  if (index >= f.group->order()) throw ArgumentError("element index out of range");
}

const Rotation& GroupElement::rotation() const {
  if (!is_rotation()) throw DomainError("element is not a rotation");
  return std::get<Rotation>(value_);
}

Element GroupElement::index() const {
  if (is_rotation()) throw DomainError("rotation has no finite index");
  return std::get<Finite>(value_).index;
}

const GroupPtr& GroupElement::group() const {
  if (is_rotation()) throw DomainError("rotation has no finite group");
  return std::get<Finite>(value_).group;
}

bool operator==(const GroupElement& a, const GroupElement& b) {
  if (a.is_rotation() != b.is_rotation()) return false;
  if (a.is_rotation()) return a.rotation().approx_equal(b.rotation(), 1e-12);
  return a.group() == b.group() && a.index() == b.index();
}

namespace {

const GroupPtr& same_group(const GroupElement& g, const GroupElement& h) {
  if (g.is_rotation() || h.is_rotation() || g.group() != h.group())
    throw DomainError("operands belong to different groups");
  return g.group();
}

}  // namespace

GroupElement multiply(const GroupElement& g, const GroupElement& h) {
  if (g.is_rotation() && h.is_rotation()) return GroupElement(g.rotation() * h.rotation());
  const GroupPtr& grp = same_group(g, h);
  return {grp, grp->multiply(g.index(), h.index())};
}

GroupElement inverse(const GroupElement& g) {
  if (g.is_rotation()) return GroupElement(g.rotation().inverse());
  return {g.group(), g.group()->inverse(g.index())};
}

GroupElement conjugate(const GroupElement& g, const GroupElement& x) {
  return multiply(multiply(g, x), inverse(g));
}

GroupElement identity_of(const GroupPtr& group) { return {group, group->identity()}; }

}  // namespace haarconv
