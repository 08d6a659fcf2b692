#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "snakecheck/decider.hpp"

// Document parsing and report emission for the batch front end. Documents
// are JSON: field/nilpotency, named modules (jordan multiset or explicit
// action), named maps and named sequences (ordered map-name lists). Reports
// are JSON with a fixed key order, so identical inputs give identical bytes.
namespace wsio {

using json = nlohmann::ordered_json;

// Malformed input (bad JSON, missing or mistyped fields): exit code 1.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Semantically invalid content (bad dimensions, non-commuting matrices,
// dangling names): exit code 2. Messages name the offending entity.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Workspace {
  modcat::Algebra alg;
  std::vector<std::string> module_order;
  std::map<std::string, modcat::RModule> modules;
  std::vector<std::string> map_order;
  std::map<std::string, modcat::ModuleMap> maps;
  std::vector<std::string> sequence_order;
  std::map<std::string, std::vector<std::string>> sequences;

  seqlab::ExactSeq build_sequence(const std::string& name) const;
  // The unique declared sequence, or the named one; throws ValidationError.
  std::string resolve_sequence_name(const std::string& requested) const;
};

Workspace parse(const std::string& text);
json emit(const Workspace& ws);

// A self-contained document describing one sequence, with modules
// deduplicated by value.
json document_from_sequence(const seqlab::ExactSeq& seq, const std::string& seq_name);

json validate_report(const Workspace& ws);
json decide_report(const std::string& seq_name, const seqlab::ExactSeq& six);
json ext_report(const std::string& seq_name, const seqlab::ExactSeq& seq);
json neeman5_report(const std::string& seq_name, const seqlab::ExactSeq& five);
json toda_report(const std::string& xn, const std::string& yn, const std::string& zn,
                 const modcat::ModuleMap& x, const modcat::ModuleMap& y,
                 const modcat::ModuleMap& z);
json snake_report(const seqlab::SesMorphism& m);
json example_report(const std::string& name, uint32_t p, int n);
json fuzz_report(uint64_t seed, int trials, int max_dim, const modcat::Algebra& alg);

// Every emitted report satisfies this schema; returns false and a reason
// when a report is malformed.
bool check_report_schema(const json& report, std::string* why);

json matrix_to_json(const exactla::PrimeMatrix& m);

}  // namespace wsio
