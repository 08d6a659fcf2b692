#include "snakecheck/wsio.hpp"

#include <algorithm>

namespace wsio {

using exactla::PrimeMatrix;
using modcat::Algebra;
using modcat::ModuleMap;
using modcat::RModule;

namespace {

long long get_int(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ParseError("missing field \"" + key + "\"");
  if (!j.at(key).is_number_integer())
    throw ParseError("field \"" + key + "\" must be an integer");
  return j.at(key).get<long long>();
}

PrimeMatrix matrix_from_json(const exactla::PrimeField& f, const json& j, int rows, int cols,
                             const std::string& entity) {
  if (!j.is_array()) throw ParseError(entity + ": matrix must be an array of rows");
  if (static_cast<int>(j.size()) != rows)
    throw ValidationError(entity + ": matrix must have " + std::to_string(rows) + " rows");
  PrimeMatrix m(f, rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json& row = j.at(i);
    if (!row.is_array()) throw ParseError(entity + ": matrix rows must be arrays");
    if (static_cast<int>(row.size()) != cols)
      throw ValidationError(entity + ": matrix row " + std::to_string(i + 1) + " must have " +
                            std::to_string(cols) + " entries");
    for (int k = 0; k < cols; ++k) {
      if (!row.at(k).is_number_integer())
        throw ParseError(entity + ": matrix entries must be integers");
      m.set(i, k, row.at(k).get<long long>());
    }
  }
  return m;
}

}  // namespace

json matrix_to_json(const PrimeMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

seqlab::ExactSeq Workspace::build_sequence(const std::string& name) const {
  auto it = sequences.find(name);
  if (it == sequences.end())
    throw ValidationError("sequence \"" + name + "\" is not declared");
  std::vector<ModuleMap> seq_maps;
  for (const std::string& mn : it->second) seq_maps.push_back(maps.at(mn));
  if (seq_maps.empty()) throw ValidationError("sequence \"" + name + "\" has no maps");
  std::vector<RModule> mods;
  mods.push_back(seq_maps.front().src());
  for (const ModuleMap& m : seq_maps) mods.push_back(m.tgt());
  return seqlab::ExactSeq(std::move(mods), std::move(seq_maps));
}

std::string Workspace::resolve_sequence_name(const std::string& requested) const {
  if (!requested.empty()) {
    if (!sequences.count(requested))
      throw ValidationError("sequence \"" + requested + "\" is not declared");
    return requested;
  }
  if (sequence_order.size() == 1) return sequence_order.front();
  throw ValidationError(sequence_order.empty()
                            ? "document declares no sequences"
                            : "document declares several sequences; pass --sequence");
}

Workspace parse(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("document must be a JSON object");

  long long p = get_int(doc, "field");
  long long n = get_int(doc, "nilpotency");
  if (p < 2 || p >= (1 << 16)) throw ValidationError("field: modulus out of range");
  exactla::PrimeField field = [&] {
    try {
      return exactla::PrimeField(static_cast<uint32_t>(p));
    } catch (const std::invalid_argument& e) {
      throw ValidationError(std::string("field: ") + e.what());
    }
  }();
  if (n < 1) throw ValidationError("nilpotency: must be >= 1");
  Workspace ws{Algebra(field, static_cast<int>(n)), {}, {}, {}, {}, {}, {}};

  if (doc.contains("modules")) {
    if (!doc.at("modules").is_object()) throw ParseError("\"modules\" must be an object");
    for (auto& [name, spec] : doc.at("modules").items()) {
      if (!spec.is_object()) throw ParseError("module \"" + name + "\": spec must be an object");
      try {
        if (spec.contains("jordan")) {
          if (!spec.at("jordan").is_array())
            throw ParseError("module \"" + name + "\": \"jordan\" must be an array");
          std::vector<int> sizes;
          for (const auto& s : spec.at("jordan")) {
            if (!s.is_number_integer())
              throw ParseError("module \"" + name + "\": jordan sizes must be integers");
            sizes.push_back(s.get<int>());
          }
          ws.modules.emplace(name, modcat::from_jordan(ws.alg, sizes));
        } else {
          long long dim = get_int(spec, "dim");
          if (dim < 0) throw ValidationError("module \"" + name + "\": negative dimension");
          if (!spec.contains("action"))
            throw ParseError("module \"" + name + "\": missing \"action\"");
          PrimeMatrix action = matrix_from_json(field, spec.at("action"),
                                                static_cast<int>(dim), static_cast<int>(dim),
                                                "module \"" + name + "\"");
          ws.modules.emplace(name, RModule(ws.alg, std::move(action)));
        }
      } catch (const std::invalid_argument& e) {
        throw ValidationError("module \"" + name + "\": " + e.what());
      }
      ws.module_order.push_back(name);
    }
  }

  if (doc.contains("maps")) {
    if (!doc.at("maps").is_object()) throw ParseError("\"maps\" must be an object");
    for (auto& [name, spec] : doc.at("maps").items()) {
      if (!spec.is_object()) throw ParseError("map \"" + name + "\": spec must be an object");
      for (const char* key : {"src", "tgt"}) {
        if (!spec.contains(key) || !spec.at(key).is_string())
          throw ParseError("map \"" + name + "\": missing \"" + key + "\"");
      }
      std::string src = spec.at("src").get<std::string>();
      std::string tgt = spec.at("tgt").get<std::string>();
      if (!ws.modules.count(src))
        throw ValidationError("map \"" + name + "\": unknown source module \"" + src + "\"");
      if (!ws.modules.count(tgt))
        throw ValidationError("map \"" + name + "\": unknown target module \"" + tgt + "\"");
      if (!spec.contains("matrix")) throw ParseError("map \"" + name + "\": missing \"matrix\"");
      const RModule& s = ws.modules.at(src);
      const RModule& t = ws.modules.at(tgt);
      PrimeMatrix mat =
          matrix_from_json(field, spec.at("matrix"), t.dim(), s.dim(), "map \"" + name + "\"");
      try {
        ws.maps.emplace(name, ModuleMap(s, t, std::move(mat)));
      } catch (const std::invalid_argument& e) {
        throw ValidationError("map \"" + name + "\": " + e.what());
      }
      ws.map_order.push_back(name);
    }
  }

  if (doc.contains("sequences")) {
    if (!doc.at("sequences").is_object()) throw ParseError("\"sequences\" must be an object");
    for (auto& [name, list] : doc.at("sequences").items()) {
      if (!list.is_array()) throw ParseError("sequence \"" + name + "\": must be an array");
      std::vector<std::string> names;
      for (const auto& mn : list) {
        if (!mn.is_string())
          throw ParseError("sequence \"" + name + "\": entries must be map names");
        std::string s = mn.get<std::string>();
        if (!ws.maps.count(s))
          throw ValidationError("sequence \"" + name + "\": unknown map \"" + s + "\"");
        names.push_back(std::move(s));
      }
      if (names.empty()) throw ValidationError("sequence \"" + name + "\": empty");
      for (size_t i = 0; i + 1 < names.size(); ++i)
        if (!(ws.maps.at(names[i]).tgt() == ws.maps.at(names[i + 1]).src()))
          throw ValidationError("sequence \"" + name + "\": maps \"" + names[i] + "\" and \"" +
                                names[i + 1] + "\" do not chain");
      ws.sequences.emplace(name, std::move(names));
      ws.sequence_order.push_back(name);
    }
  }
  return ws;
}

json emit(const Workspace& ws) {
  json doc;
  doc["field"] = ws.alg.field.p();
  doc["nilpotency"] = ws.alg.n;
  json mods = json::object();
  for (const std::string& name : ws.module_order) {
    const RModule& m = ws.modules.at(name);
    mods[name] = {{"dim", m.dim()}, {"action", matrix_to_json(m.action())}};
  }
  doc["modules"] = std::move(mods);
  json maps = json::object();
  for (const std::string& name : ws.map_order) {
    const ModuleMap& m = ws.maps.at(name);
    std::string src, tgt;
    for (const auto& [mn, mod] : ws.modules) {
      if (src.empty() && mod == m.src()) src = mn;
      if (tgt.empty() && mod == m.tgt()) tgt = mn;
    }
    maps[name] = {{"src", src}, {"tgt", tgt}, {"matrix", matrix_to_json(m.matrix())}};
  }
  doc["maps"] = std::move(maps);
  json seqs = json::object();
  for (const std::string& name : ws.sequence_order) seqs[name] = ws.sequences.at(name);
  doc["sequences"] = std::move(seqs);
  return doc;
}

json document_from_sequence(const seqlab::ExactSeq& seq, const std::string& seq_name) {
  json doc;
  const Algebra& alg = seq.modules()[0].algebra();
  doc["field"] = alg.field.p();
  doc["nilpotency"] = alg.n;

  std::vector<RModule> distinct;
  std::vector<int> position_name(seq.length());
  for (int i = 0; i < seq.length(); ++i) {
    auto it = std::find(distinct.begin(), distinct.end(), seq.modules()[i]);
    if (it == distinct.end()) {
      distinct.push_back(seq.modules()[i]);
      position_name[i] = static_cast<int>(distinct.size()) - 1;
    } else {
      position_name[i] = static_cast<int>(it - distinct.begin());
    }
  }
  auto module_name = [](int k) { return "M" + std::to_string(k + 1); };
  json mods = json::object();
  for (size_t k = 0; k < distinct.size(); ++k)
    mods[module_name(static_cast<int>(k))] = {{"dim", distinct[k].dim()},
                                              {"action", matrix_to_json(distinct[k].action())}};
  doc["modules"] = std::move(mods);

  json maps = json::object();
  std::vector<std::string> map_names;
  for (size_t i = 0; i < seq.maps().size(); ++i) {
    std::string name = "f" + std::to_string(i + 1);
    maps[name] = {{"src", module_name(position_name[i])},
                  {"tgt", module_name(position_name[i + 1])},
                  {"matrix", matrix_to_json(seq.maps()[i].matrix())}};
    map_names.push_back(std::move(name));
  }
  doc["maps"] = std::move(maps);
  doc["sequences"] = {{seq_name, map_names}};
  return doc;
}

json validate_report(const Workspace& ws) {
  json r;
  r["command"] = "validate";
  r["ok"] = true;
  r["field"] = ws.alg.field.p();
  r["nilpotency"] = ws.alg.n;
  json mods = json::object();
  for (const std::string& name : ws.module_order) mods[name] = ws.modules.at(name).dim();
  r["modules"] = std::move(mods);
  json maps = json::object();
  for (const std::string& name : ws.map_order) {
    const ModuleMap& m = ws.maps.at(name);
    maps[name] = {{"rows", m.matrix().rows()}, {"cols", m.matrix().cols()}};
  }
  r["maps"] = std::move(maps);
  json seqs = json::object();
  for (const std::string& name : ws.sequence_order)
    seqs[name] = static_cast<int>(ws.sequences.at(name).size()) + 1;
  r["sequences"] = std::move(seqs);
  return r;
}

namespace {

json verdict_json(const seqlab::ExactSeq& six) {
  decider::RealizabilityVerdict v = decider::snake_realizable(six);
  json r;
  r["exact"] = v.exact;
  r["neeman"] = {{"ext3_MA_zero", v.ext3_ma_zero}, {"ext3_FK_zero", v.ext3_fk_zero}};
  r["toda"] = {{"defined", v.toda_defined}, {"contains_zero", v.toda_contains_zero}};
  r["realizable"] = v.realizable;
  r["obstruction"] = decider::obstruction_name(v.obstruction);
  json details = json::object();
  if (v.data) {
    details["K_dim"] = v.data->k.dim();
    details["L_dim"] = v.data->l.dim();
    details["M_dim"] = v.data->m.dim();
    json sthom = json::object();
    sthom["alpha"] = modcat::sthom_dim(v.data->alpha.source, v.data->alpha.rep.tgt());
    sthom["beta"] = modcat::sthom_dim(v.data->beta.source, v.data->beta.rep.tgt());
    sthom["gamma"] = modcat::sthom_dim(v.data->gamma.source, v.data->gamma.rep.tgt());
    sthom["delta"] = modcat::sthom_dim(v.data->delta.source, v.data->delta.rep.tgt());
    details["sthom_dims"] = std::move(sthom);
    details["indeterminacy_dim"] = v.data->bracket.indeterminacy.dim();
    if (v.data->bracket.representative)
      details["bracket_representative"] =
          matrix_to_json(v.data->bracket.representative->canonical());
    else
      details["bracket_representative"] = nullptr;
  } else {
    json positions = json::array();
    for (const auto& pos : seqlab::verify_exact(six).positions)
      positions.push_back({{"position", pos.index},
                           {"image_dim", pos.image_dim},
                           {"kernel_dim", pos.kernel_dim},
                           {"ok", pos.ok}});
    details["exactness"] = std::move(positions);
  }
  r["details"] = std::move(details);
  return r;
}

}  // namespace

json decide_report(const std::string& seq_name, const seqlab::ExactSeq& six) {
  json r;
  r["command"] = "decide";
  r["sequence"] = seq_name;
  json v = verdict_json(six);
  r.update(v);
  return r;
}

json ext_report(const std::string& seq_name, const seqlab::ExactSeq& seq) {
  seqlab::ExtClass cls = seqlab::long_class(seq);
  json r;
  r["command"] = "ext";
  r["sequence"] = seq_name;
  r["degree"] = cls.degree;
  r["source_dim"] = cls.source.dim();
  r["target_dim"] = cls.target.dim();
  r["stably_zero"] = cls.is_zero();
  r["representative"] = matrix_to_json(cls.rep.canonical());
  return r;
}

json neeman5_report(const std::string& seq_name, const seqlab::ExactSeq& five) {
  json r;
  r["command"] = "neeman5";
  r["sequence"] = seq_name;
  r["realizable"] = decider::neeman5(five);
  return r;
}

json toda_report(const std::string& xn, const std::string& yn, const std::string& zn,
                 const ModuleMap& x, const ModuleMap& y, const ModuleMap& z) {
  toda::BracketVerdict b = toda::toda_bracket(modcat::stable_reduce(x), modcat::stable_reduce(y),
                                              modcat::stable_reduce(z));
  json r;
  r["command"] = "toda";
  r["maps"] = {{"x", xn}, {"y", yn}, {"z", zn}};
  r["defined"] = b.defined;
  r["contains_zero"] = b.contains_zero;
  r["indeterminacy_dim"] = b.indeterminacy.dim();
  if (b.representative)
    r["representative"] = matrix_to_json(b.representative->canonical());
  else
    r["representative"] = nullptr;
  return r;
}

json snake_report(const seqlab::SesMorphism& m) {
  seqlab::ExactSeq six = seqlab::snake(m);
  json r;
  r["command"] = "snake";
  r["exact"] = seqlab::verify_exact(six).exact;
  r["document"] = document_from_sequence(six, "snake");
  return r;
}

json example_report(const std::string& name, uint32_t p, int n) {
  json r;
  r["command"] = "example";
  r["name"] = name;
  r["field"] = p;
  r["nilpotency"] = n;
  if (name == "paper") {
    if (n != 3) throw ValidationError("example paper: only defined for nilpotency 3");
    decider::PaperExample ex = decider::paper_example(p);
    r["document"] = document_from_sequence(ex.six, "six");
    r["verdict"] = verdict_json(ex.six);
  } else if (name == "resolution") {
    modcat::Algebra alg{exactla::PrimeField(p), n};
    seqlab::ExactSeq six = decider::resolution_example(alg);
    r["document"] = document_from_sequence(six, "six");
    r["verdict"] = verdict_json(six);
  } else {
    throw ValidationError("example: unknown example \"" + name + "\"");
  }
  return r;
}

json fuzz_report(uint64_t seed, int trials, int max_dim, const Algebra& alg) {
  seqlab::RandomParams params{alg, max_dim};
  decider::FuzzResult res = decider::fuzz_snake(seed, trials, params);
  json r;
  r["command"] = "fuzz";
  r["trials"] = res.trials;
  r["seed"] = seed;
  r["max_dim"] = max_dim;
  r["field"] = alg.field.p();
  r["nilpotency"] = alg.n;
  r["passed"] = res.passed;
  r["failures"] = res.failures;
  return r;
}

bool check_report_schema(const json& report, std::string* why) {
  auto fail = [&](const std::string& reason) {
    if (why) *why = reason;
    return false;
  };
  if (!report.is_object()) return fail("report is not an object");
  if (!report.contains("command") || !report.at("command").is_string())
    return fail("missing command");
  std::string cmd = report.at("command").get<std::string>();
  auto need = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys)
      if (!report.contains(k)) return false;
    return true;
  };
  if (cmd == "decide") {
    if (!need({"sequence", "exact", "neeman", "toda", "realizable", "obstruction", "details"}))
      return fail("decide: missing keys");
    const json& nm = report.at("neeman");
    if (!nm.contains("ext3_MA_zero") || !nm.contains("ext3_FK_zero"))
      return fail("decide: malformed neeman block");
    const json& td = report.at("toda");
    if (!td.contains("defined") || !td.contains("contains_zero"))
      return fail("decide: malformed toda block");
    static const char* tags[] = {"none", "not-exact", "neeman-MA", "neeman-FK", "toda"};
    std::string ob = report.at("obstruction").get<std::string>();
    if (std::find(std::begin(tags), std::end(tags), ob) == std::end(tags))
      return fail("decide: unknown obstruction tag");
    return true;
  }
  if (cmd == "validate")
    return need({"ok", "field", "nilpotency", "modules", "maps", "sequences"})
               ? true
               : fail("validate: missing keys");
  if (cmd == "ext")
    return need({"sequence", "degree", "stably_zero", "representative"})
               ? true
               : fail("ext: missing keys");
  if (cmd == "neeman5")
    return need({"sequence", "realizable"}) ? true : fail("neeman5: missing keys");
  if (cmd == "toda")
    return need({"maps", "defined", "contains_zero", "indeterminacy_dim", "representative"})
               ? true
               : fail("toda: missing keys");
  if (cmd == "snake") return need({"exact", "document"}) ? true : fail("snake: missing keys");
  if (cmd == "example")
    return need({"name", "field", "nilpotency", "document", "verdict"})
               ? true
               : fail("example: missing keys");
  if (cmd == "fuzz")
    return need({"trials", "seed", "max_dim", "field", "nilpotency", "passed", "failures"})
               ? true
               : fail("fuzz: missing keys");
  return fail("unknown command \"" + cmd + "\"");
}

}  // namespace wsio
