// Batch front end: parse a workspace document, run a verification or
// decision, and print a JSON report. Exit codes: 0 computed verdict (YES or
// NO alike), 1 parse error, 2 validation error, 64 usage error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "snakecheck/wsio.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw wsio::ParseError("cannot open input file \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_report(const wsio::json& report) {
  std::string why;
  if (!wsio::check_report_schema(report, &why))
    throw std::logic_error("internal: report fails its own schema: " + why);
  std::cout << report.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"snakecheck: decide whether six-term exact sequences over "
               "F_p[x]/(x^n) come from the snake lemma"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  std::string input = "-";
  std::string seq_name;
  std::string top_name, bottom_name, f1_name, f2_name, f3_name;
  std::string x_name, y_name, z_name;
  std::string example_name;
  bool document_only = false;
  uint32_t field_p = 2;
  int nilpotency = 3;
  int trials = 100;
  uint64_t seed = 1;
  int max_dim = 8;

  auto* validate = app.add_subcommand("validate", "parse and validate a document");
  validate->add_option("input", input, "document path or - for stdin");

  auto* decide = app.add_subcommand("decide", "decide snake realizability of a six-term sequence");
  decide->add_option("input", input, "document path or - for stdin");
  decide->add_option("--sequence", seq_name, "declared sequence to decide");

  auto* snake = app.add_subcommand("snake", "apply the snake lemma to a morphism of short exact sequences");
  snake->add_option("input", input, "document path or - for stdin");
  snake->add_option("--top", top_name, "top short exact sequence")->required();
  snake->add_option("--bottom", bottom_name, "bottom short exact sequence")->required();
  snake->add_option("--f1", f1_name, "first component map")->required();
  snake->add_option("--f2", f2_name, "second component map")->required();
  snake->add_option("--f3", f3_name, "third component map")->required();

  auto* toda_cmd = app.add_subcommand("toda", "Toda bracket of three composable maps");
  toda_cmd->add_option("input", input, "document path or - for stdin");
  toda_cmd->add_option("--x", x_name, "first map")->required();
  toda_cmd->add_option("--y", y_name, "second map")->required();
  toda_cmd->add_option("--z", z_name, "third map")->required();

  auto* ext = app.add_subcommand("ext", "extension class of an exact sequence");
  ext->add_option("input", input, "document path or - for stdin");
  ext->add_option("--sequence", seq_name, "declared sequence");

  auto* neeman5 = app.add_subcommand("neeman5", "length-five realizability criterion");
  neeman5->add_option("input", input, "document path or - for stdin");
  neeman5->add_option("--sequence", seq_name, "declared sequence");

  auto* example = app.add_subcommand("example", "print a built-in example and its verdict");
  example->add_option("name", example_name, "paper | resolution")->required();
  example->add_option("--field", field_p, "prime field modulus");
  example->add_option("--nilpotency", nilpotency, "nilpotency order n");
  example->add_flag("--document-only", document_only, "print just the workspace document");

  auto* fuzz = app.add_subcommand("fuzz", "random snake-lemma soundness harness");
  fuzz->add_option("--trials", trials, "number of trials");
  fuzz->add_option("--seed", seed, "base seed");
  fuzz->add_option("--max-dim", max_dim, "largest random module dimension");
  fuzz->add_option("--n", nilpotency, "nilpotency order n");
  fuzz->add_option("--field", field_p, "prime field modulus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  try {
    if (*validate) {
      wsio::Workspace ws = wsio::parse(read_input(input));
      print_report(wsio::validate_report(ws));
    } else if (*decide) {
      wsio::Workspace ws = wsio::parse(read_input(input));
      std::string name = ws.resolve_sequence_name(seq_name);
      seqlab::ExactSeq six = ws.build_sequence(name);
      if (six.length() != 6)
        throw wsio::ValidationError("sequence \"" + name + "\": decide needs six modules");
      print_report(wsio::decide_report(name, six));
    } else if (*snake) {
      wsio::Workspace ws = wsio::parse(read_input(input));
      for (const std::string* mn : {&f1_name, &f2_name, &f3_name})
        if (!ws.maps.count(*mn))
          throw wsio::ValidationError("map \"" + *mn + "\" is not declared");
      seqlab::ExactSeq top = ws.build_sequence(top_name);
      seqlab::ExactSeq bottom = ws.build_sequence(bottom_name);
      seqlab::SesMorphism m(top, bottom, ws.maps.at(f1_name), ws.maps.at(f2_name),
                            ws.maps.at(f3_name));
      print_report(wsio::snake_report(m));
    } else if (*toda_cmd) {
      wsio::Workspace ws = wsio::parse(read_input(input));
      for (const std::string* mn : {&x_name, &y_name, &z_name})
        if (!ws.maps.count(*mn))
          throw wsio::ValidationError("map \"" + *mn + "\" is not declared");
      print_report(wsio::toda_report(x_name, y_name, z_name, ws.maps.at(x_name),
                                     ws.maps.at(y_name), ws.maps.at(z_name)));
    } else if (*ext) {
      wsio::Workspace ws = wsio::parse(read_input(input));
      std::string name = ws.resolve_sequence_name(seq_name);
      print_report(wsio::ext_report(name, ws.build_sequence(name)));
    } else if (*neeman5) {
      wsio::Workspace ws = wsio::parse(read_input(input));
      std::string name = ws.resolve_sequence_name(seq_name);
      seqlab::ExactSeq five = ws.build_sequence(name);
      if (five.length() != 5)
        throw wsio::ValidationError("sequence \"" + name + "\": neeman5 needs five modules");
      print_report(wsio::neeman5_report(name, five));
    } else if (*example) {
      wsio::json report = wsio::example_report(example_name, field_p, nilpotency);
      if (document_only)
        std::cout << report.at("document").dump(2) << "\n";
      else
        print_report(report);
    } else if (*fuzz) {
      modcat::Algebra alg{exactla::PrimeField(field_p), nilpotency};
      print_report(wsio::fuzz_report(seed, trials, max_dim, alg));
    }
  } catch (const wsio::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const wsio::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
