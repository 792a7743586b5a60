#pragma once

#include <string>
#include <vector>

namespace losr {

enum class Kind { Trivial, Classical, Quantum };

// A concrete system: kind plus Hilbert-space dimension (classical systems are
// carried as diagonal quantum systems of the same dimension).
struct System {
  Kind kind = Kind::Trivial;
  int dim = 1;

  bool operator==(const System&) const = default;
};

System trivial_system();
System classical_system(int dim);
System quantum_system(int dim);

// Least expressive kind embedding both (I < C < Q).
Kind promote(Kind a, Kind b);

// Q embeds C embeds I; reflexive total order.
bool embeds(Kind a, Kind b);

// Dimension-free partition type X -> Y of one party's share.
struct PartitionType {
  Kind in = Kind::Trivial;
  Kind out = Kind::Trivial;

  bool operator==(const PartitionType&) const = default;
};

using GlobalType = std::vector<PartitionType>;

// True iff the output is trivial; such partitions never carry nonclassicality
// (nonsignaling makes their input inert too).
bool is_trivial_partition(const PartitionType& t);

enum class Encode { Yes, No, Unknown };

// Provenance keys name the argument behind each cell of the encodability
// table.
struct EncodeVerdict {
  Encode value = Encode::Unknown;
  std::string provenance;  // embed | werner-states | losr-cannot-entangle |
                           // trans | semiquantum-games | thm-3 | open
};

// Can partition type t encode the nonclassicality of partition type u?
EncodeVerdict partition_encodes(const PartitionType& t, const PartitionType& u);

// Partitionwise-sufficient global ordering; Yes when every partition pair is
// Yes, No for the two proved global obstructions (boxes vs states), Unknown
// otherwise. Throws on party-count mismatch.
EncodeVerdict global_encodes_sufficient(const GlobalType& t,
                                        const GlobalType& u);

// String grammar: systems "I","C","Q"; partition "Q->C"; global "QQ->CC".
std::string to_string(Kind k);
std::string to_string(const PartitionType& t);
std::string to_string(const GlobalType& t);
std::string to_string(Encode e);
PartitionType parse_partition_type(const std::string& s);
GlobalType parse_global_type(const std::string& s);

// All nine partition types, fixed enumeration order (in-major, I,C,Q).
std::vector<PartitionType> all_partition_types();

}  // namespace losr
