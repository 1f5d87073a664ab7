// End-to-end checks of the command-line binary. The test runner passes the
// binary's path in the MMOHOCC_CLI environment variable; this suite is
// registered as its own ctest entry.
#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <doctest.h>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mmohocc/hex.hpp"
#include "mmohocc/known_answers.hpp"
#include "oracles.hpp"

namespace {

std::string cli_path() {
  const char* path = std::getenv("MMOHOCC_CLI");
  REQUIRE_MESSAGE(path != nullptr, "MMOHOCC_CLI must point at the binary");
  return path;
}

int run(const std::string& args, const std::string& stdout_path = "cli_out.tmp") {
  const std::string cmd = cli_path() + " " + args + " >" + stdout_path + " 2>cli_err.tmp";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::uint8_t> slurp_bytes(const std::string& path) {
  const std::string s = slurp(path);
  return std::vector<std::uint8_t>(s.begin(), s.end());
}

constexpr const char* kZeroKey = "00000000000000000000000000000000";

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("keygen emits keys of the requested width") {
  REQUIRE(run("keygen") == 0);
  std::string out = slurp("cli_out.tmp");
  CHECK(out.size() == 33);  // 32 hex chars + newline
  REQUIRE(run("keygen --bits 256") == 0);
  CHECK(slurp("cli_out.tmp").size() == 65);
  REQUIRE(run("keygen --bits 512") == 0);
  CHECK(slurp("cli_out.tmp").size() == 129);
  CHECK(run("keygen --bits 100") == 1);
}

TEST_CASE("gen reproduces the pinned keystream vector") {
  REQUIRE(run(std::string("gen --key ") + kZeroKey + " --bytes 64 --out ks.tmp") == 0);
  const auto bytes = slurp_bytes("ks.tmp");
  REQUIRE(bytes.size() == 64);
  for (std::size_t i = 0; i < 64; ++i) {
    REQUIRE(bytes[i] == mmohocc::known_answers::kZeroKeyKeystream64[i]);
  }
  std::remove("ks.tmp");
}

TEST_CASE("encrypt then decrypt round-trips a binary file") {
  oracles::TestRng rng(2024);
  const auto message = rng.bytes(100000);
  {
    std::ofstream out("plain.tmp", std::ios::binary);
    out.write(reinterpret_cast<const char*>(message.data()),
              static_cast<std::streamsize>(message.size()));
  }
  const std::string key = "000102030405060708090a0b0c0d0e0f";
  REQUIRE(run("encrypt --key " + key + " --in plain.tmp --out cipher.tmp") == 0);
  const auto cipher = slurp_bytes("cipher.tmp");
  CHECK(cipher.size() == message.size());
  CHECK(cipher != message);
  REQUIRE(run("decrypt --key " + key + " --in cipher.tmp --out roundtrip.tmp") == 0);
  CHECK(slurp_bytes("roundtrip.tmp") == message);
  std::remove("plain.tmp");
  std::remove("cipher.tmp");
  std::remove("roundtrip.tmp");
}

TEST_CASE("pattern prints the table row for cross-implementation diffing") {
  REQUIRE(run("pattern --hpsn 0 --orbits 11") == 0);
  CHECK(slurp("cli_out.tmp") == "10 4 3 8 11 2 6 9 7 5 1\n");
  CHECK(run("pattern --hpsn 256 --orbits 11") == 1);
}

TEST_CASE("vectors lists the known answers") {
  REQUIRE(run("vectors") == 0);
  const std::string out = slurp("cli_out.tmp");
  CHECK(out.find("b456bcfc34c2cb2c") != std::string::npos);
  CHECK(out.find(mmohocc::to_hex(mmohocc::known_answers::kZeroKeyKeystream64.data(),
                                 64)) != std::string::npos);
  CHECK(out.find("10 4 3 8 11 2 6 9 7 5 1") != std::string::npos);
}

TEST_CASE("exit codes distinguish usage from i/o errors") {
  CHECK(run("") == 1);                 // missing subcommand
  CHECK(run("frobnicate") == 1);       // unknown subcommand
  CHECK(run("gen --key zz --bytes 4 --out x.tmp") == 1);      // malformed hex
  CHECK(run("gen --key 00ff --bytes 4 --out x.tmp") == 1);    // bad key length
  CHECK(run("encrypt --key 000102030405060708090a0b0c0d0e0f "
            "--in missing.bin --out x.tmp") == 2);
  CHECK(run("test --sequences 1 --bits 1000") == 1);  // neither --key nor --in
  CHECK(run("test --in missing.bin --sequences 1 --bits 1000") == 2);
}

TEST_CASE("test subcommand writes all three report formats") {
  const int code = run(
      "test --key 000102030405060708090a0b0c0d0e0f --sequences 2 --bits 20000 "
      "--threads 1 --report report_tmp");
  CHECK(code == 0);
  const std::string text = slurp("report_tmp.txt");
  CHECK(text.find("Frequency (Mono-bit)") != std::string::npos);
  const std::string json = slurp("report_tmp.json");
  CHECK(json.find("\"proportion_range\"") != std::string::npos);
  CHECK(json.find("\"command\"") != std::string::npos);
  const std::string csv = slurp("report_tmp.csv");
  CHECK(csv.find("bin_start,bin_end") != std::string::npos);
  CHECK(slurp("cli_out.tmp").find("acceptable proportion range") != std::string::npos);
  std::remove("report_tmp.txt");
  std::remove("report_tmp.json");
  std::remove("report_tmp.csv");
}

TEST_CASE("a heavily biased input file concludes non-random with exit 3") {
  {
    std::ofstream out("biased.tmp", std::ios::binary);
    const std::vector<char> zeros(2500 * 3, 0);
    out.write(zeros.data(), static_cast<std::streamsize>(zeros.size()));
  }
  const int code = run("test --in biased.tmp --sequences 3 --bits 20000 --threads 1");
  CHECK(code == 3);
  std::remove("biased.tmp");
}

TEST_SUITE_END();
