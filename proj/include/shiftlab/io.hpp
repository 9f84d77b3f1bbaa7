#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "shiftlab/characterization.hpp"
#include "shiftlab/intset.hpp"
#include "shiftlab/progression_set.hpp"
#include "shiftlab/s5.hpp"
#include "shiftlab/s6.hpp"
#include "shiftlab/sparse_vector.hpp"
#include "shiftlab/weights.hpp"

namespace shiftlab::io {

using Json = nlohmann::ordered_json;

/// Malformed or ill-typed input; `where` names the file and JSON location.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string where_) : Error(where_ + ": " + what), where(std::move(where_)) {}
  std::string where;
};

Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);
/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

/// Sets: {"window":[lo,hi], "members":[...]}, {"window":…, "ap":{"b":…,"offset":…}}
/// (or a list of such objects for a union), {"window":…, "intervals":[[lo,hi],…]}
/// and {"window":…, "blocks":[[first,last,step],…]}.
ProgressionSet progression_set_from_json(const Json& j, const std::string& where = "set");
IntSet intset_from_json(const Json& j, const std::string& where = "set");
Json to_json(const IntSet& s);
Json to_json(const ProgressionSet& s);

/// Weights: {"domain":…, "window":[first,last], "logw":[…], "log2w":[…]} with
/// "log2w" preferred when present, or a generator reference
/// {"generator":"constant:2"|"s5"|"s6", …parameters}. An object holding a
/// "weights" member is unwrapped first.
WeightSeq weight_from_json(const Json& j, const std::string& where = "weights");
/// Explicit form for dense models; throws ResourceError above `max_entries`.
Json weight_to_json(const WeightSeq& w, Index max_entries = Index{1} << 24);
Json constant_weight_ref(double w, Domain domain, Window cum_window);
Json s5_weight_ref(const S5State& st);
Json s6_weight_ref(const S6Config& cfg, Index dense_limit);

/// Vectors: {"space":"c0"|"lp", "p":…, "entries":[[k, value], …]}.
SparseVec vector_from_json(const Json& j, const std::string& where = "vector");
Json to_json(const SparseVec& x);
Json to_json(const LogSparseVec& x);

/// Families: {"rho":…, "log2_M":[…], "E":[set, …]}; an object holding a
/// "family" member is unwrapped first.
FhcFamily family_from_json(const Json& j, const std::string& where = "family");
Json to_json(const FhcFamily& fam);

Json to_json(const S5State& st);
Json to_json(const S6Config& cfg);

}  // namespace shiftlab::io
