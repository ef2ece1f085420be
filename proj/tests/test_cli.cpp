#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sample_machines.hpp"
#include "tmlab/cli.hpp"

using namespace tmlab;

namespace {

struct CliResult {
  int status;
  std::string out;
  std::string err;
};

CliResult invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = dispatch(std::move(args), out, err);
  return {status, out.str(), err.str()};
}

// scratch file helper for stream/program inputs
class TempFile {
 public:
  TempFile(std::string name, const std::string& contents) : path_(std::move(name)) {
    std::ofstream file(path_);
    file << contents;
  }
  ~TempFile() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace

TEST_CASE("decode prints a machine summary") {
  const CliResult r = invoke({"decode", "(10,0,1,((0,0,0,0,0)),(1))"});
  CHECK(r.status == 0);
  CHECK(r.out.find("states\t2") != std::string::npos);
  CHECK(r.out.find("transition\t(0,0)->(0,0,L)") != std::string::npos);
}

TEST_CASE("decode reports syntax errors with a position") {
  const CliResult r = invoke({"decode", "(1,0,1"});
  CHECK(r.status == 1);
  CHECK(r.err.find("syntax error") != std::string::npos);
  CHECK(r.err.find("position 6") != std::string::npos);
}

TEST_CASE("run reports the outcome and exact step count") {
  const CliResult halted = invoke({"run", "--machine-number", "21040414220404140413342133",
                                   "--input", "", "--fuel", "10"});
  CHECK(halted.status == 0);
  CHECK(halted.out == "HALTED steps=1\n");

  const CliResult starved = invoke({"run", "--machine-number", "21040414220404040403342133",
                                    "--fuel", "25"});
  CHECK(starved.status == 1);
  CHECK(starved.out == "OUT_OF_FUEL steps=25\n");
}

TEST_CASE("run can print the tape digits") {
  const std::string number = number_of(samples::threes_machine());
  const CliResult r = invoke({"run", "--machine-number", number, "--input", "000", "--fuel",
                              "100", "--print-output", "10"});
  CHECK(r.status == 0);
  CHECK(r.out.find("output=333") != std::string::npos);
}

TEST_CASE("encode, number and unnumber round-trip at the command line") {
  const CliResult enc = invoke({"encode", "--machine-number", "21040414220404040403342133"});
  CHECK(enc.status == 0);
  CHECK(enc.out == "(10,0,1,((0,0,0,0,0)),(1))\n");

  const CliResult num = invoke({"number", "(1)"});
  CHECK(num.status == 0);
  CHECK(num.out == "213\n");

  const CliResult unnum = invoke({"unnumber", "213"});
  CHECK(unnum.status == 0);
  CHECK(unnum.out == "(1)\n");
}

TEST_CASE("validate lists broken rules and signals them in the status") {
  const CliResult good = invoke({"validate", "(10,0,1,((0,0,0,0,0)),(1))"});
  CHECK(good.status == 0);
  CHECK(good.out == "ok\n");

  const CliResult bad = invoke({"validate", "(1,0,1,((0,0,0,0,0)),(1))"});
  CHECK(bad.status == 1);
  CHECK(bad.out.find("STATE_COUNT") != std::string::npos);
}

TEST_CASE("enumerate emits machine numbers and program listings") {
  const CliResult machines = invoke({"enumerate", "--limit", "4"});
  CHECK(machines.status == 0);
  std::istringstream lines(machines.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "21040414220404040403342133");
  int count = 1;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 4);

  const CliResult programs = invoke({"enumerate", "--programs", "3"});
  CHECK(programs.status == 0);
  CHECK(programs.out.find("0\t21040414220404040403342133\t") != std::string::npos);

  const CliResult both = invoke({"enumerate", "--limit", "2", "--programs", "2"});
  CHECK(both.status == 1);
}

TEST_CASE("dovetail emits one line per horizon and honours workers") {
  const CliResult serial = invoke({"dovetail", "--horizon", "6"});
  CHECK(serial.status == 0);
  std::istringstream lines(serial.out);
  std::string line;
  int horizon = 0;
  while (std::getline(lines, line)) {
    ++horizon;
    CHECK(line.rfind(std::to_string(horizon) + "\t", 0) == 0);
    CHECK(line.size() == std::to_string(horizon).size() + 1 + static_cast<std::size_t>(horizon));
  }
  CHECK(horizon == 6);

  const CliResult parallel = invoke({"dovetail", "--horizon", "6", "--workers", "4"});
  CHECK(parallel.out == serial.out);
}

TEST_CASE("dovetail accepts an explicit program file and checkpoints") {
  const std::string halt = number_of(samples::halt_machine());
  const std::string loop = number_of(samples::loop_machine());
  const TempFile programs("tmlab_test_programs.txt", halt + "\t\n" + loop + "\t\n");

  const CliResult full = invoke({"dovetail", "--horizon", "4", "--programs", programs.path()});
  CHECK(full.status == 0);
  CHECK(full.out == "1\t1\n2\t10\n3\t10\n4\t10\n");

  const CliResult saved = invoke({"dovetail", "--horizon", "2", "--programs", programs.path(),
                                  "--save-checkpoint", "tmlab_test_ckpt.txt"});
  CHECK(saved.status == 0);
  const CliResult resumed = invoke({"dovetail", "--horizon", "4", "--programs", programs.path(),
                                    "--load-checkpoint", "tmlab_test_ckpt.txt"});
  std::remove("tmlab_test_ckpt.txt");
  CHECK(resumed.status == 0);
  CHECK(resumed.out == "3\t10\n4\t10\n");
}

TEST_CASE("approx checkers run from the command line") {
  const std::string threes = number_of(samples::threes_machine());
  const TempFile reference("tmlab_test_reference.txt", std::string(50, '3') + "\n");

  const CliResult computable =
      invoke({"approx", "check-computable", "--machine", threes, "--base", "10", "--horizon",
              "20", "--reference", reference.path()});
  CHECK(computable.status == 0);
  CHECK(computable.out.find("verdict\tConformsUpTo(20)") != std::string::npos);
  CHECK(computable.out.find("1\tok\t3") != std::string::npos);

  const std::string two_phase = number_of(samples::two_phase_machine());
  const CliResult approaching =
      invoke({"approx", "check-approaching", "--machine", two_phase, "--base", "10", "--m", "1",
              "--horizon", "20"});
  CHECK(approaching.status == 0);
  CHECK(approaching.out.find("verdict\tConformsUpTo(7)") != std::string::npos);

  const std::string loop = number_of(samples::loop_machine());
  const CliResult fails = invoke({"approx", "check-computable", "--machine", loop, "--base", "10",
                                  "--horizon", "5", "--fuel-base", "100"});
  CHECK(fails.status == 1);
  CHECK(fails.out.find("ViolatesAt(1") != std::string::npos);
}

TEST_CASE("diagonal reads stream files") {
  const TempFile streams("tmlab_test_streams.txt", "111\n222\n333\n");
  const CliResult shifted =
      invoke({"diagonal", "--streams", streams.path(), "--n", "3", "--base", "10"});
  CHECK(shifted.status == 0);
  CHECK(shifted.out == "234\n");

  const CliResult plain =
      invoke({"diagonal", "--prime", "--streams", streams.path(), "--n", "3", "--base", "10"});
  CHECK(plain.out == "123\n");

  const CliResult starved =
      invoke({"diagonal", "--streams", streams.path(), "--n", "4", "--base", "10"});
  CHECK(starved.status == 1);
  CHECK(starved.err.find("insufficient digits") != std::string::npos);
}

TEST_CASE("experiments emit key-value reports") {
  const CliResult report = invoke({"experiment", "h-monotone", "--set", "N=20"});
  CHECK(report.status == 0);
  CHECK(report.out.find("experiment\th-monotone") != std::string::npos);
  CHECK(report.out.find("param.N\t20") != std::string::npos);
  CHECK(report.out.find("verdict\tPASS") != std::string::npos);

  const CliResult roundtrip = invoke({"experiment", "roundtrip", "--set", "max-number-length=30"});
  CHECK(roundtrip.status == 0);
  CHECK(roundtrip.out.find("machines\t10") != std::string::npos);
  CHECK(roundtrip.out.find("verdict\tPASS") != std::string::npos);

  const CliResult differs = invoke({"experiment", "diagonal-differs", "--set", "n=64"});
  CHECK(differs.status == 0);
  CHECK(differs.out.find("param.seed") != std::string::npos);
  CHECK(differs.out.find("verdict\tPASS") != std::string::npos);

  const CliResult unknown = invoke({"experiment", "nope"});
  CHECK(unknown.status == 1);
  CHECK(unknown.err.find("unknown experiment") != std::string::npos);
}

TEST_CASE("experiments can be driven by a config file") {
  const TempFile config("tmlab_test_experiment.txt", "experiment\th-monotone\nN\t15\n");
  const CliResult report = invoke({"experiment", "--config", config.path()});
  CHECK(report.status == 0);
  CHECK(report.out.find("param.N\t15") != std::string::npos);
  CHECK(report.out.find("verdict\tPASS") != std::string::npos);

  const CliResult missing = invoke({"experiment"});
  CHECK(missing.status == 1);
}

TEST_CASE("usage errors exit with status 2") {
  CHECK(invoke({"frobnicate"}).status == 2);
  CHECK(invoke({"run", "--fuel"}).status == 2);
  CHECK(invoke({"dovetail"}).status == 2);
  CHECK(invoke({}).status == 2);
}

TEST_CASE("help is a success") {
  CHECK(invoke({"--help"}).status == 0);
  CHECK(invoke({"--help"}).out.find("dovetail") != std::string::npos);
}
