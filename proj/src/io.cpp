#include "shiftlab/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace shiftlab::io {

namespace {

const Json& need(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ParseError("expected an object", where);
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing \"") + key + "\"", where);
  return *it;
}

template <class T>
T get(const Json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what(), where);
  }
}

Window window_from(const Json& j, const std::string& where) {
  const auto v = get<std::vector<Index>>(j, where);
  if (v.size() != 2) throw ParseError("window must be [lo, hi]", where);
  if (v[0] > v[1]) throw ParseError("window has lo > hi", where);
  return {v[0], v[1]};
}

Json window_json(Window w) { return Json::array({w.lo, w.hi}); }

Domain domain_from(const Json& j, const std::string& where) {
  const auto s = get<std::string>(j, where);
  if (s == "unilateral") return Domain::unilateral;
  if (s == "bilateral") return Domain::bilateral;
  throw ParseError("domain must be \"unilateral\" or \"bilateral\"", where);
}

const char* domain_name(Domain d) { return d == Domain::unilateral ? "unilateral" : "bilateral"; }

Rational rational_from(const Json& j, const std::string& where) {
  const auto v = get<std::vector<Index>>(j, where);
  if (v.size() != 2 || v[1] <= 0) throw ParseError("rational must be [num, den] with den > 0", where);
  return {v[0], v[1]};
}

std::vector<Block> ap_blocks(const Json& ap, Window w, const std::string& where) {
  const Index b = get<Index>(need(ap, "b", where), where + ".b");
  const Index off = get<Index>(need(ap, "offset", where), where + ".offset");
  if (b <= 0) throw ParseError("ap step must be positive", where + ".b");
  const Index r = ((off % b) + b) % b;
  Index first = w.lo + ((r - w.lo) % b + b) % b;
  if (first > w.hi) return {};
  const Index last = first + (w.hi - first) / b * b;
  return {{first, last, b}};
}

}  // namespace

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file", path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), path.string() + " (byte " + std::to_string(e.byte) + ")");
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << dump(j);
}

ProgressionSet progression_set_from_json(const Json& j, const std::string& where) {
  const Window w = window_from(need(j, "window", where), where + ".window");
  if (j.contains("members")) {
    auto m = get<std::vector<Index>>(j["members"], where + ".members");
    for (Index x : m) {
      if (!w.contains(x)) throw ParseError("member " + std::to_string(x) + " outside the window", where + ".members");
    }
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    std::vector<Block> blocks;
    for (Index x : m) {
      if (!blocks.empty()) {
        Block& b = blocks.back();
        if (b.count() == 1 || x - b.last == b.step) {
          b.step = x - b.last;
          b.last = x;
          continue;
        }
      }
      blocks.push_back({x, x, 1});
    }
    return ProgressionSet(w, std::move(blocks));
  }
  if (j.contains("ap")) {
    const Json& ap = j["ap"];
    if (ap.is_object()) return ProgressionSet(w, ap_blocks(ap, w, where + ".ap"));
    if (!ap.is_array()) throw ParseError("ap must be an object or a list", where + ".ap");
    IntSet u(w);
    for (std::size_t i = 0; i < ap.size(); ++i) {
      const std::string loc = where + ".ap[" + std::to_string(i) + "]";
      u = u | ProgressionSet(w, ap_blocks(ap[i], w, loc)).to_intset();
    }
    return ProgressionSet::from_intset(u);
  }
  if (j.contains("intervals")) {
    const auto iv = get<std::vector<std::pair<Index, Index>>>(j["intervals"], where + ".intervals");
    return ProgressionSet::from_intset(make_interval_union(iv, w));
  }
  if (j.contains("blocks")) {
    const Json& bl = j["blocks"];
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < bl.size(); ++i) {
      const auto v = get<std::vector<Index>>(bl[i], where + ".blocks[" + std::to_string(i) + "]");
      if (v.size() != 3) throw ParseError("block must be [first, last, step]", where + ".blocks");
      blocks.push_back({v[0], v[1], v[2]});
    }
    try {
      return ProgressionSet(w, std::move(blocks));
    } catch (const Error& e) {
      throw ParseError(e.what(), where + ".blocks");
    }
  }
  throw ParseError("set needs one of members, ap, intervals, blocks", where);
}

IntSet intset_from_json(const Json& j, const std::string& where) {
  return progression_set_from_json(j, where).to_intset();
}

Json to_json(const IntSet& s) {
  return Json{{"window", window_json(s.window())}, {"members", s.members()}};
}

Json to_json(const ProgressionSet& s) {
  auto blocks = Json::array();
  for (const Block& b : s.blocks()) blocks.push_back(Json::array({b.first, b.last, b.step}));
  return Json{{"window", window_json(s.window())}, {"blocks", std::move(blocks)}};
}

WeightSeq weight_from_json(const Json& j, const std::string& where) {
  if (j.is_object() && j.contains("weights")) return weight_from_json(j["weights"], where + ".weights");
  if (!j.is_object()) throw ParseError("expected an object", where);
  if (j.contains("generator")) {
    const auto gen = get<std::string>(j["generator"], where + ".generator");
    if (gen.rfind("constant:", 0) == 0) {
      double c = 0.0;
      try {
        c = std::stod(gen.substr(9));
      } catch (const std::exception&) {
        throw ParseError("bad constant in \"" + gen + "\"", where + ".generator");
      }
      const Domain d = domain_from(need(j, "domain", where), where + ".domain");
      const Window w = window_from(need(j, "window", where), where + ".window");
      try {
        return WeightSeq::constant(c, d, w);
      } catch (const ArgumentError& e) {
        throw ParseError(e.what(), where);
      }
    }
    if (gen == "s5") {
      const int depth = get<int>(need(j, "depth", where), where + ".depth");
      const double slack = j.contains("slack") ? get<double>(j["slack"], where + ".slack") : 1.0;
      const S5State st = build_s5(depth, slack);
      const Index hi = j.contains("hi") ? get<Index>(j["hi"], where + ".hi") : -1;
      return build_s5_weight(st, hi);
    }
    if (gen == "s6") {
      const S6Config cfg = make_s6_config(rational_from(need(j, "a", where), where + ".a"),
                                          rational_from(need(j, "epsilon", where), where + ".epsilon"),
                                          get<int>(need(j, "pmax", where), where + ".pmax"),
                                          get<Index>(need(j, "window", where), where + ".window"));
      const Index dense = j.contains("dense_limit") ? get<Index>(j["dense_limit"], where + ".dense_limit")
                                                    : Index{10'000'000};
      return build_s6_weight(cfg, dense);
    }
    throw ParseError("unknown generator \"" + gen + "\"", where + ".generator");
  }
  const Domain d = domain_from(need(j, "domain", where), where + ".domain");
  const Window w = window_from(need(j, "window", where), where + ".window");
  std::vector<double> l2;
  if (j.contains("log2w")) {
    l2 = get<std::vector<double>>(j["log2w"], where + ".log2w");
  } else {
    l2 = get<std::vector<double>>(need(j, "logw", where), where + ".logw");
    for (double& v : l2) v /= std::log(2.0);
  }
  if (static_cast<Index>(l2.size()) != w.size()) {
    throw ParseError("weight list has " + std::to_string(l2.size()) + " entries for window " + to_string(w),
                     where);
  }
  try {
    return WeightSeq::from_log2(d, w.lo, l2);
  } catch (const ArgumentError& e) {
    throw ParseError(e.what(), where);
  }
}

Json weight_to_json(const WeightSeq& w, Index max_entries) {
  const Window idx = w.index_window();
  if (idx.size() > max_entries) {
    throw ResourceError("weight window " + to_string(idx) + " too large to list", max_entries);
  }
  std::vector<double> l2, ln;
  for (Index j = idx.lo; j <= idx.hi; ++j) {
    l2.push_back(w.log2_weight(j));
    ln.push_back(l2.back() * std::log(2.0));
  }
  return Json{{"domain", domain_name(w.domain())}, {"window", window_json(idx)}, {"logw", ln}, {"log2w", l2}};
}

Json constant_weight_ref(double c, Domain domain, Window cum_window) {
  return Json{{"generator", WeightSeq::constant(c, domain, cum_window).model().generator()},
              {"domain", domain_name(domain)},
              {"window", window_json(cum_window)}};
}

Json s5_weight_ref(const S5State& st) {
  return Json{{"generator", "s5"}, {"depth", st.depth}, {"slack", st.slack}, {"hi", st.weight_limit()}};
}

Json s6_weight_ref(const S6Config& cfg, Index dense_limit) {
  return Json{{"generator", "s6"},
              {"a", Json::array({cfg.a.num, cfg.a.den})},
              {"epsilon", Json::array({cfg.epsilon.num, cfg.epsilon.den})},
              {"pmax", cfg.pmax},
              {"window", cfg.window},
              {"dense_limit", dense_limit}};
}

SparseVec vector_from_json(const Json& j, const std::string& where) {
  Space space = Space::c0();
  if (j.contains("space")) {
    const auto s = get<std::string>(j["space"], where + ".space");
    if (s == "lp") {
      try {
        space = Space::lp(get<double>(need(j, "p", where), where + ".p"));
      } catch (const ArgumentError& e) {
        throw ParseError(e.what(), where + ".p");
      }
    } else if (s != "c0") {
      throw ParseError("space must be \"c0\" or \"lp\"", where + ".space");
    }
  }
  const auto e = get<std::vector<std::pair<Index, double>>>(need(j, "entries", where), where + ".entries");
  try {
    return SparseVec::from_entries(e, space);
  } catch (const ArgumentError& err) {
    throw ParseError(err.what(), where + ".entries");
  }
}

Json to_json(const SparseVec& x) {
  Json j{{"space", x.space().kind == Space::Kind::c0 ? "c0" : "lp"}};
  if (x.space().kind == Space::Kind::lp) j["p"] = x.space().p;
  auto e = Json::array();
  for (const auto& [k, v] : x.entries()) e.push_back(Json::array({k, v}));
  j["entries"] = std::move(e);
  return j;
}

Json to_json(const LogSparseVec& x) {
  Json j{{"space", x.space().kind == Space::Kind::c0 ? "c0" : "lp"}};
  if (x.space().kind == Space::Kind::lp) j["p"] = x.space().p;
  auto e = Json::array();
  for (const auto& [k, v] : x.entries()) {
    e.push_back(Json{{"index", k}, {"sign", v.sign()}, {"log2_abs", v.log2_abs()}, {"value", v.to_double()}});
  }
  j["entries"] = std::move(e);
  return j;
}

FhcFamily family_from_json(const Json& j, const std::string& where) {
  if (j.is_object() && j.contains("family")) return family_from_json(j["family"], where + ".family");
  FhcFamily fam;
  fam.rho = j.contains("rho") ? get<double>(j["rho"], where + ".rho") : 2.0;
  const Json& E = need(j, "E", where);
  if (!E.is_array()) throw ParseError("E must be a list of sets", where + ".E");
  for (std::size_t i = 0; i < E.size(); ++i) {
    fam.E.push_back(progression_set_from_json(E[i], where + ".E[" + std::to_string(i) + "]"));
  }
  if (j.contains("log2_M")) {
    fam.log2_M = get<std::vector<double>>(j["log2_M"], where + ".log2_M");
  } else {
    const double ex = j.contains("M_exponent") ? get<double>(j["M_exponent"], where + ".M_exponent") : 1.0;
    fam.log2_M = geometric_targets(fam.pmax(), ex);
  }
  if (fam.log2_M.size() != fam.E.size()) throw ParseError("log2_M needs one entry per E_p", where + ".log2_M");
  return fam;
}

Json to_json(const FhcFamily& fam) {
  auto E = Json::array();
  for (const auto& e : fam.E) E.push_back(to_json(e));
  return Json{{"rho", fam.rho}, {"log2_M", fam.log2_M}, {"E", std::move(E)}};
}

Json to_json(const S5State& st) {
  auto steps = Json::array();
  for (const S5Step& s : st.steps) steps.push_back(Json{{"p", s.p}, {"r", s.r}, {"M", s.M}, {"N", s.N}});
  return Json{{"depth", st.depth}, {"slack", st.slack}, {"a", st.a},           {"b", st.b},
              {"a_next", st.a_next}, {"b_next", st.b_next}, {"steps", steps}, {"weight_limit", st.weight_limit()}};
}

Json to_json(const S6Config& cfg) {
  auto iv = Json::array();
  for (const S6Interval& i : cfg.intervals) {
    iv.push_back(Json{{"u", i.u},
                      {"p", i.p},
                      {"kept", i.kept},
                      {"inner", window_json(i.inner)},
                      {"mid", window_json(i.mid)},
                      {"outer", window_json(i.outer)}});
  }
  return Json{{"a", Json::array({cfg.a.num, cfg.a.den})},
              {"epsilon", Json::array({cfg.epsilon.num, cfg.epsilon.den})},
              {"pmax", cfg.pmax},
              {"window", cfg.window},
              {"b", cfg.b},
              {"intervals", std::move(iv)}};
}

}  // namespace shiftlab::io
