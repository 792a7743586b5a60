#include "losr/types.hpp"

#include <array>
#include <map>
#include <stdexcept>

namespace losr {

System trivial_system() { return {Kind::Trivial, 1}; }
System classical_system(int dim) {
  if (dim < 2) throw std::invalid_argument("classical system needs dim >= 2");
  return {Kind::Classical, dim};
}
System quantum_system(int dim) {
  if (dim < 2) throw std::invalid_argument("quantum system needs dim >= 2");
  return {Kind::Quantum, dim};
}

namespace {
int rank(Kind k) {
  switch (k) {
    case Kind::Trivial: return 0;
    case Kind::Classical: return 1;
    case Kind::Quantum: return 2;
  }
  return 0;
}
}  // namespace

Kind promote(Kind a, Kind b) { return rank(a) >= rank(b) ? a : b; }

bool embeds(Kind a, Kind b) { return rank(a) >= rank(b); }

bool is_trivial_partition(const PartitionType& t) {
  return t.out == Kind::Trivial;
}

std::vector<PartitionType> all_partition_types() {
  std::vector<PartitionType> out;
  const std::array<Kind, 3> kinds{Kind::Trivial, Kind::Classical,
                                  Kind::Quantum};
  for (Kind in : kinds)
    for (Kind o : kinds) out.push_back({in, o});
  return out;
}

namespace {

// The encodability table over the six nontrivial partition types, derived
// from its generating rules rather than stored as a grid:
//   (i)   embeddings give Yes,
//   (ii)  Q->C and Q->Q sit alone at the top and encode everything,
//   (iii) C->C and I->Q fail to encode each other (Werner states; LOSR
//         cannot entangle),
//   (iv)  every No forced by transitive closure of (i)-(iii),
//   (v)   the two remaining cells are open.
struct EncodeTable {
  std::vector<PartitionType> types;           // the six nontrivial types
  std::map<std::pair<int, int>, EncodeVerdict> cell;  // (encoder, encodee)

  EncodeTable() {
    for (const auto& t : all_partition_types())
      if (!is_trivial_partition(t)) types.push_back(t);
    const int n = static_cast<int>(types.size());

    auto idx = [&](Kind in, Kind out) {
      for (int i = 0; i < n; ++i)
        if (types[i].in == in && types[i].out == out) return i;
      throw std::logic_error("missing type");
    };
    const int iq = idx(Kind::Trivial, Kind::Quantum);
    const int cc = idx(Kind::Classical, Kind::Classical);
    const int cq = idx(Kind::Classical, Kind::Quantum);
    const int qc = idx(Kind::Quantum, Kind::Classical);
    const int qq = idx(Kind::Quantum, Kind::Quantum);

    auto set = [&](int t, int u, Encode e, const std::string& why) {
      cell[{t, u}] = {e, why};
    };
    auto known = [&](int t, int u) { return cell.count({t, u}) > 0; };
    auto is = [&](int t, int u, Encode e) {
      auto it = cell.find({t, u});
      return it != cell.end() && it->second.value == e;
    };

    // (i) embeddings
    for (int t = 0; t < n; ++t)
      for (int u = 0; u < n; ++u)
        if (embeds(types[t].in, types[u].in) &&
            embeds(types[t].out, types[u].out))
          set(t, u, Encode::Yes, "embed");
    // (ii) the top equivalence class
    set(qc, iq, Encode::Yes, "semiquantum-games");
    set(qc, cq, Encode::Yes, "thm-3");
    set(qc, qq, Encode::Yes, "thm-3");
    for (int u = 0; u < n; ++u)
      if (!known(qc, u)) set(qc, u, Encode::Yes, "embed");
    // (iii) the two proved obstructions
    set(cc, iq, Encode::No, "werner-states");
    set(iq, cc, Encode::No, "losr-cannot-entangle");
    // (iv) transitive closure: Yes(v,t) & No(v,u) => No(t,u), and
    //      No(t,w) & Yes(u,w) => No(t,u)
    bool changed = true;
    while (changed) {
      changed = false;
      for (int t = 0; t < n; ++t)
        for (int u = 0; u < n; ++u) {
          if (known(t, u)) continue;
          bool no = false;
          for (int v = 0; v < n && !no; ++v)
            if (is(v, t, Encode::Yes) && is(v, u, Encode::No)) no = true;
          for (int w = 0; w < n && !no; ++w)
            if (is(t, w, Encode::No) && is(u, w, Encode::Yes)) no = true;
          if (no) {
            set(t, u, Encode::No, "trans");
            changed = true;
          }
        }
    }
    // (v) what remains is open
    for (int t = 0; t < n; ++t)
      for (int u = 0; u < n; ++u)
        if (!known(t, u)) set(t, u, Encode::Unknown, "open");
  }

  int index_of(const PartitionType& t) const {
    for (size_t i = 0; i < types.size(); ++i)
      if (types[i] == t) return static_cast<int>(i);
    return -1;
  }
};

const EncodeTable& table() {
  static const EncodeTable t;
  return t;
}

}  // namespace

EncodeVerdict partition_encodes(const PartitionType& t,
                                const PartitionType& u) {
  const bool tt = is_trivial_partition(t), tu = is_trivial_partition(u);
  if (tu) return {Encode::Yes, "embed"};  // trivial partitions are the bottom
  if (tt) return {Encode::No, "trans"};   // and encode nothing nontrivial
  const auto& tab = table();
  return tab.cell.at({tab.index_of(t), tab.index_of(u)});
}

EncodeVerdict global_encodes_sufficient(const GlobalType& t,
                                        const GlobalType& u) {
  if (t.size() != u.size())
    throw std::invalid_argument("global types have different party counts");
  // Proved global obstructions between boxes and states, both directions.
  const GlobalType boxes = parse_global_type("CC->CC");
  const GlobalType states = parse_global_type("II->QQ");
  if ((t == boxes && u == states)) return {Encode::No, "werner-states"};
  if ((t == states && u == boxes)) return {Encode::No, "losr-cannot-entangle"};

  bool all_yes = true;
  for (size_t i = 0; i < t.size(); ++i) {
    auto v = partition_encodes(t[i], u[i]);
    if (v.value != Encode::Yes) all_yes = false;
  }
  if (all_yes) return {Encode::Yes, "embed"};
  // Partitionwise failure does not prove a global failure.
  return {Encode::Unknown, "open"};
}

std::string to_string(Kind k) {
  switch (k) {
    case Kind::Trivial: return "I";
    case Kind::Classical: return "C";
    case Kind::Quantum: return "Q";
  }
  return "?";
}

std::string to_string(const PartitionType& t) {
  return to_string(t.in) + "->" + to_string(t.out);
}

std::string to_string(const GlobalType& t) {
  std::string in, out;
  for (const auto& p : t) {
    in += to_string(p.in);
    out += to_string(p.out);
  }
  return in + "->" + out;
}

std::string to_string(Encode e) {
  switch (e) {
    case Encode::Yes: return "Yes";
    case Encode::No: return "No";
    case Encode::Unknown: return "Unknown";
  }
  return "?";
}

namespace {
Kind parse_kind(char c) {
  switch (c) {
    case 'I': return Kind::Trivial;
    case 'C': return Kind::Classical;
    case 'Q': return Kind::Quantum;
  }
  throw std::invalid_argument(std::string("bad system kind '") + c + "'");
}
}  // namespace

PartitionType parse_partition_type(const std::string& s) {
  auto g = parse_global_type(s);
  if (g.size() != 1)
    throw std::invalid_argument("expected a single-party type: " + s);
  return g[0];
}

GlobalType parse_global_type(const std::string& s) {
  auto arrow = s.find("->");
  if (arrow == std::string::npos)
    throw std::invalid_argument("type string missing '->': " + s);
  std::string in = s.substr(0, arrow), out = s.substr(arrow + 2);
  if (in.empty() || in.size() != out.size())
    throw std::invalid_argument("type string sides must match: " + s);
  GlobalType g;
  for (size_t i = 0; i < in.size(); ++i)
    g.push_back({parse_kind(in[i]), parse_kind(out[i])});
  return g;
}

}  // namespace losr
