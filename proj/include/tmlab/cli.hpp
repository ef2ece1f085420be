#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tmlab/tmlab.hpp"

// Command-line front end. Exit status: 0 on success, 1 on verdict failures
// and domain errors, 2 on usage errors. All output is deterministic for
// fixed inputs, independent of the worker count.

namespace tmlab {
namespace cli {

inline Machine machine_from(const std::string& number, const std::string& encoding) {
  if (!number.empty()) return decode(from_number(number));
  return decode(encoding);
}

inline std::vector<SymbolId> word_from_digits(const std::string& digits) {
  std::vector<SymbolId> word;
  word.reserve(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] < '0' || digits[i] > '9') throw IllegalDigit(digits[i], i);
    word.push_back(static_cast<SymbolId>(digits[i] - '0'));
  }
  return word;
}

inline std::string digits_of_word(const std::vector<SymbolId>& word) {
  std::string s;
  for (const SymbolId sym : word)
    s.push_back(sym <= 9 ? static_cast<char>('0' + sym) : '?');
  return s;
}

inline void print_machine(const Machine& m, std::ostream& out) {
  out << "states\t" << m.states << "\n";
  out << "input-symbols\t" << m.input_symbols << "\n";
  out << "tape-symbols\t" << m.tape_symbols << "\n";
  out << "blank\t" << m.blank() << "\n";
  std::string finals;
  for (const StateId f : m.finals) {
    if (!finals.empty()) finals += ',';
    finals += std::to_string(f);
  }
  out << "finals\t" << finals << "\n";
  for (const Transition& t : m.transitions)
    out << "transition\t(" << t.from_state << "," << t.read << ")->(" << t.to_state << ","
        << t.write << "," << (t.move == Move::Right ? 'R' : 'L') << ")\n";
}

inline std::vector<Program> load_program_list(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw Error("cannot open program file: " + path);
  std::vector<Program> programs;
  std::string line;
  while (std::getline(file, line)) {
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    const std::string number = line.substr(0, tab);
    const std::string input = tab == std::string::npos ? "" : line.substr(tab + 1);
    programs.push_back({decode(from_number(number)), word_from_digits(input)});
  }
  return programs;
}

inline std::vector<DigitStream> load_streams(const std::string& path, unsigned base) {
  std::ifstream file(path);
  if (!file) throw Error("cannot open stream file: " + path);
  std::vector<DigitStream> streams;
  std::string line;
  while (std::getline(file, line)) streams.emplace_back(base, line);
  return streams;
}

inline std::optional<DigitStream> load_reference(const std::string& path, unsigned base) {
  if (path.empty()) return std::nullopt;
  std::ifstream file(path);
  if (!file) throw Error("cannot open reference file: " + path);
  std::string line;
  std::getline(file, line);
  return DigitStream(base, line);
}

inline void print_report(const ApproxReport& report, std::ostream& out) {
  for (const Observation& o : report.transcript)
    out << o.input << "\t" << o.status << "\t" << o.output << "\n";
  out << "verdict\t" << report.verdict_string() << "\n";
}

}  // namespace cli

inline int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"workbench for machine encodings, enumeration, bounded simulation,\n"
               "dovetailed halting approximation and digit-stream checks"};
  app.require_subcommand(1);

  // encode: parse a machine and print its canonical encoding
  auto* cmd_encode = app.add_subcommand("encode", "print the canonical encoding of a machine");
  std::string encode_number, encode_encoding;
  cmd_encode->add_option("--machine-number", encode_number, "machine as a base-5 digit string");
  cmd_encode->add_option("--encoding", encode_encoding, "machine as an encoding string");

  auto* cmd_decode = app.add_subcommand("decode", "parse an encoding and print the machine");
  std::string decode_text;
  cmd_decode->add_option("encoding", decode_text, "encoding string")->required();

  auto* cmd_number = app.add_subcommand("number", "substitute an encoding into base-5 digits");
  std::string number_text;
  cmd_number->add_option("encoding", number_text, "string over 0 1 ( ) ,")->required();

  auto* cmd_unnumber = app.add_subcommand("unnumber", "substitute base-5 digits back into an encoding");
  std::string unnumber_text;
  cmd_unnumber->add_option("digits", unnumber_text, "digit string over 0..4")->required();

  auto* cmd_validate = app.add_subcommand("validate", "list the machine rules an encoding breaks");
  std::string validate_text, validate_number;
  cmd_validate->add_option("encoding", validate_text, "encoding string");
  cmd_validate->add_option("--machine-number", validate_number, "machine as a base-5 digit string");

  auto* cmd_enumerate = app.add_subcommand("enumerate", "list machines in increasing number order");
  std::uint64_t enum_limit = 0, enum_programs = 0, enum_max_length = 0;
  cmd_enumerate->add_option("--limit", enum_limit, "emit this many machine numbers");
  cmd_enumerate->add_option("--max-number-length", enum_max_length,
                            "emit every machine number up to this many digits");
  cmd_enumerate->add_option("--programs", enum_programs,
                            "emit this many programs as index<TAB>number<TAB>input");

  auto* cmd_run = app.add_subcommand("run", "run one machine with a step budget");
  std::string run_number, run_encoding, run_input;
  std::uint64_t run_fuel = 0;
  unsigned run_output_base = 0;
  cmd_run->add_option("--machine-number", run_number, "machine as a base-5 digit string");
  cmd_run->add_option("--encoding", run_encoding, "machine as an encoding string");
  cmd_run->add_option("--input", run_input, "input word as digit characters");
  cmd_run->add_option("--fuel", run_fuel, "step budget")->required();
  cmd_run->add_option("--print-output", run_output_base,
                      "also print the tape digits read in this base");

  auto* cmd_dovetail = app.add_subcommand(
      "dovetail", "halting bits per horizon: bit i is 1 once program i halts within n steps");
  std::uint64_t dove_horizon = 0;
  unsigned dove_workers = 1;
  std::string dove_programs, dove_save, dove_load;
  cmd_dovetail->add_option("--horizon", dove_horizon, "final horizon N")->required();
  cmd_dovetail->add_option("--programs", dove_programs,
                           "program list file: machine_number<TAB>input per line "
                           "(default: the built-in program numbering)");
  cmd_dovetail->add_option("--workers", dove_workers, "simulation threads (output-invariant)");
  cmd_dovetail->add_option("--save-checkpoint", dove_save, "write a snapshot after the last horizon");
  cmd_dovetail->add_option("--load-checkpoint", dove_load, "resume from a snapshot");

  auto* cmd_approx = app.add_subcommand("approx", "digit-printing contract checkers");
  cmd_approx->require_subcommand(1);
  std::string approx_number, approx_encoding, approx_reference;
  unsigned approx_base = 10;
  std::uint64_t approx_horizon = 50, approx_m = 1;
  FuelPolicy approx_fuel;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--machine", approx_number, "machine as a base-5 digit string");
    sub->add_option("--encoding", approx_encoding, "machine as an encoding string");
    sub->add_option("--base", approx_base, "digit base (2..10)")->capture_default_str();
    sub->add_option("--horizon", approx_horizon, "largest input to try")->capture_default_str();
    sub->add_option("--fuel-base", approx_fuel.base_steps, "flat part of the per-run step budget")
        ->capture_default_str();
    sub->add_option("--fuel-quadratic", approx_fuel.quadratic,
                    "quadratic coefficient of the per-run step budget")
        ->capture_default_str();
  };
  auto* cmd_computable = cmd_approx->add_subcommand(
      "check-computable", "input n must yield at least n consistent digits");
  add_common(cmd_computable);
  cmd_computable->add_option("--reference", approx_reference,
                             "file holding the expected digit string");
  auto* cmd_approaching = cmd_approx->add_subcommand(
      "check-approaching", "search for a window where the first m digits stabilise");
  add_common(cmd_approaching);
  cmd_approaching->add_option("--m", approx_m, "number of leading digits that must stabilise");

  auto* cmd_diagonal = app.add_subcommand("diagonal", "diagonal digit string over listed streams");
  std::string diagonal_file;
  std::uint64_t diagonal_n = 0;
  unsigned diagonal_base = 10;
  bool diagonal_plain = false;
  cmd_diagonal->add_option("--streams", diagonal_file, "file with one digit string per line")
      ->required();
  cmd_diagonal->add_option("--n", diagonal_n, "output length")->required();
  cmd_diagonal->add_option("--base", diagonal_base, "digit base (2..10)");
  cmd_diagonal->add_flag("--prime", diagonal_plain, "emit the unshifted diagonal");

  auto* cmd_experiment = app.add_subcommand("experiment", "run a built-in experiment");
  std::string experiment_id, experiment_out, experiment_config;
  std::vector<std::string> experiment_params;
  cmd_experiment->add_option("id", experiment_id, "h-monotone | roundtrip | diagonal-differs");
  cmd_experiment->add_option("--config", experiment_config,
                             "file of key<TAB>value lines; the experiment key names the id");
  cmd_experiment->add_option("--set", experiment_params, "parameter as key=value");
  cmd_experiment->add_option("--out", experiment_out, "write the report to a file");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("tmlab");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (cmd_encode->parsed()) {
      if (encode_number.empty() == encode_encoding.empty())
        throw std::invalid_argument("encode: give exactly one of --machine-number, --encoding");
      out << encode(cli::machine_from(encode_number, encode_encoding)) << "\n";
      return 0;
    }
    if (cmd_decode->parsed()) {
      cli::print_machine(decode(decode_text), out);
      return 0;
    }
    if (cmd_number->parsed()) {
      out << to_number(number_text) << "\n";
      return 0;
    }
    if (cmd_unnumber->parsed()) {
      out << from_number(unnumber_text) << "\n";
      return 0;
    }
    if (cmd_validate->parsed()) {
      if (validate_text.empty() == validate_number.empty())
        throw std::invalid_argument("validate: give exactly one of an encoding, --machine-number");
      const std::string text =
          validate_text.empty() ? from_number(validate_number) : validate_text;
      const ValidityReport report = validate(parse_encoding(text));
      if (report.ok()) {
        out << "ok\n";
        return 0;
      }
      for (const Violation& v : report.violations) out << v.rule << "\t" << v.detail << "\n";
      return 1;
    }
    if (cmd_enumerate->parsed()) {
      const int modes = (enum_limit > 0) + (enum_max_length > 0) + (enum_programs > 0);
      if (modes != 1)
        throw std::invalid_argument(
            "enumerate: give exactly one of --limit, --max-number-length, --programs");
      if (enum_programs > 0) {
        ProgramNumbering numbering;
        for (std::uint64_t i = 0; i < enum_programs; ++i) {
          const Program p = numbering.program_of(i);
          out << i << "\t" << number_of(p.machine) << "\t" << cli::digits_of_word(p.input) << "\n";
        }
        return 0;
      }
      MachineEnumerator machines;
      if (enum_limit > 0) {
        for (std::size_t rank = 1; rank <= enum_limit; ++rank)
          out << machines.number(rank) << "\n";
      } else {
        for (std::size_t rank = 1; machines.number(rank).size() <= enum_max_length; ++rank)
          out << machines.number(rank) << "\n";
      }
      return 0;
    }
    if (cmd_run->parsed()) {
      if (run_number.empty() == run_encoding.empty())
        throw std::invalid_argument("run: give exactly one of --machine-number, --encoding");
      const Machine machine = cli::machine_from(run_number, run_encoding);
      const std::vector<SymbolId> input = cli::word_from_digits(run_input);
      const RunResult result = run(machine, input, run_fuel);
      out << (result.halted() ? "HALTED" : "OUT_OF_FUEL") << " steps=" << result.config.steps
          << "\n";
      if (run_output_base != 0)
        out << "output=" << read_output(result.config, run_output_base) << "\n";
      return result.halted() ? 0 : 1;
    }
    if (cmd_dovetail->parsed()) {
      ProgramUniverse universe = dove_programs.empty()
                                     ? ProgramUniverse()
                                     : ProgramUniverse(cli::load_program_list(dove_programs));
      DovetailState state;
      if (!dove_load.empty()) {
        std::ifstream file(dove_load);
        if (!file) throw Error("cannot open checkpoint: " + dove_load);
        state = load_checkpoint(file, universe);
      }
      if (state.horizon >= dove_horizon)
        throw std::invalid_argument("dovetail: horizon must exceed the checkpoint horizon");
      for (std::uint64_t h = state.horizon + 1; h <= dove_horizon; ++h) {
        state = advance(std::move(state), h, universe, dove_workers);
        out << h << "\t" << bits(state) << "\n";
      }
      if (!dove_save.empty()) {
        std::ofstream file(dove_save);
        if (!file) throw Error("cannot open checkpoint for writing: " + dove_save);
        save_checkpoint(state, file);
      }
      return 0;
    }
    if (cmd_computable->parsed() || cmd_approaching->parsed()) {
      if (approx_number.empty() == approx_encoding.empty())
        throw std::invalid_argument("approx: give exactly one of --machine, --encoding");
      const Machine machine = cli::machine_from(approx_number, approx_encoding);
      const ApproxReport report =
          cmd_computable->parsed()
              ? check_computable(machine, approx_base, approx_horizon,
                                 cli::load_reference(approx_reference, approx_base), approx_fuel)
              : check_approaching(machine, approx_base, approx_m, approx_horizon, approx_fuel);
      cli::print_report(report, out);
      return report.conforms() ? 0 : 1;
    }
    if (cmd_diagonal->parsed()) {
      const std::vector<DigitStream> streams = cli::load_streams(diagonal_file, diagonal_base);
      out << (diagonal_plain ? diagonal_prime(streams, diagonal_n)
                             : diagonal(streams, diagonal_n, diagonal_base))
          << "\n";
      return 0;
    }
    if (cmd_experiment->parsed()) {
      std::map<std::string, std::string> params;
      if (!experiment_config.empty()) {
        std::ifstream file(experiment_config);
        if (!file) throw Error("cannot open experiment config: " + experiment_config);
        std::string line;
        while (std::getline(file, line)) {
          if (line.empty()) continue;
          const std::size_t tab = line.find('\t');
          if (tab == std::string::npos)
            throw std::invalid_argument("experiment: config lines must be key<TAB>value");
          const std::string key = line.substr(0, tab);
          const std::string value = line.substr(tab + 1);
          if (key == "experiment")
            experiment_id = value;
          else
            params[key] = value;
        }
      }
      for (const std::string& kv : experiment_params) {
        const std::size_t eq = kv.find('=');
        if (eq == std::string::npos)
          throw std::invalid_argument("experiment: --set expects key=value, got '" + kv + "'");
        params[kv.substr(0, eq)] = kv.substr(eq + 1);
      }
      if (experiment_id.empty())
        throw std::invalid_argument("experiment: name an id or give a config naming one");
      const ExperimentReport report = run_experiment(experiment_id, params);
      std::ostringstream text;
      for (const auto& [key, value] : report.lines) text << key << "\t" << value << "\n";
      if (experiment_out.empty()) {
        out << text.str();
      } else {
        std::ofstream file(experiment_out);
        if (!file) throw Error("cannot open report file: " + experiment_out);
        file << text.str();
      }
      return report.pass ? 0 : 1;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    err << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace tmlab
