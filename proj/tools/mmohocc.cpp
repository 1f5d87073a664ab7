// mmohocc command-line tool: key generation, keystream output, file
// encryption, hopping-pattern inspection, known-answer vectors, and the
// randomness test battery with text/JSON/CSV reports.
//
// Exit codes: 0 success, 1 usage error, 2 I/O error, 3 battery concluded
// non-random (some pass proportion fell below the acceptable range).
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "mmohocc/battery.hpp"
#include "mmohocc/generator.hpp"
#include "mmohocc/hex.hpp"
#include "mmohocc/hopping.hpp"
#include "mmohocc/kernels.hpp"
#include "mmohocc/known_answers.hpp"
#include "mmohocc/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitNonRandom = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

mmohocc::MasterKey parse_key(const std::string& hex) {
  try {
    return mmohocc::MasterKey::from_hex(hex);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("invalid key: ") + e.what());
  }
}

int run_keygen(unsigned bits) {
  if (bits != 128 && bits != 256 && bits != 512) {
    throw UsageError("--bits must be 128, 256 or 512");
  }
  std::random_device entropy;
  std::vector<std::uint8_t> key(bits / 8);
  for (auto& b : key) b = static_cast<std::uint8_t>(entropy());
  std::cout << mmohocc::to_hex(key) << "\n";
  return kExitOk;
}

int run_gen(const std::string& key_hex, std::uint64_t bytes, const std::string& out,
            std::uint32_t maps, std::uint32_t orbits) {
  mmohocc::KeystreamGenerator gen(parse_key(key_hex), maps, orbits);
  std::ofstream os(out, std::ios::binary);
  if (!os) throw IoError("cannot open output file: " + out);
  std::vector<std::uint8_t> buf(1 << 16);
  std::uint64_t remaining = bytes;
  while (remaining > 0) {
    const std::size_t chunk = static_cast<std::size_t>(
        std::min<std::uint64_t>(remaining, buf.size()));
    gen.generate(std::span<std::uint8_t>(buf.data(), chunk));
    os.write(reinterpret_cast<const char*>(buf.data()),
             static_cast<std::streamsize>(chunk));
    if (!os) throw IoError("error writing: " + out);
    remaining -= chunk;
  }
  return kExitOk;
}

int run_crypt(const std::string& key_hex, const std::string& in,
              const std::string& out, std::uint32_t maps, std::uint32_t orbits) {
  mmohocc::KeystreamGenerator gen(parse_key(key_hex), maps, orbits);
  std::ifstream is(in, std::ios::binary);
  if (!is) throw IoError("cannot open input file: " + in);
  std::ofstream os(out, std::ios::binary);
  if (!os) throw IoError("cannot open output file: " + out);
  std::vector<std::uint8_t> buf(1 << 16);
  for (;;) {
    is.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(buf.size()));
    const std::size_t got = static_cast<std::size_t>(is.gcount());
    if (got == 0) break;
    std::span<std::uint8_t> chunk(buf.data(), got);
    gen.xor_cipher(chunk, chunk);
    os.write(reinterpret_cast<const char*>(buf.data()),
             static_cast<std::streamsize>(got));
    if (!os) throw IoError("error writing: " + out);
    if (is.eof()) break;
    if (!is) throw IoError("error reading: " + in);
  }
  return kExitOk;
}

int run_pattern(std::uint32_t hpsn, std::uint32_t orbits) {
  mmohocc::HoppingPattern pattern;
  try {
    pattern = mmohocc::pattern_for_hpsn(hpsn, orbits);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  for (std::size_t i = 0; i < pattern.order.size(); ++i) {
    if (i > 0) std::cout << ' ';
    std::cout << pattern.order[i];
  }
  std::cout << "\n";
  return kExitOk;
}

int run_vectors() {
  using namespace mmohocc::known_answers;
  char line[128];
  std::snprintf(line, sizeof line, "mix64(0)          = %016llx\n",
                static_cast<unsigned long long>(kMix64OfZero));
  std::cout << line;
  std::snprintf(line, sizeof line, "mix64(1)          = %016llx\n",
                static_cast<unsigned long long>(kMix64OfOne));
  std::cout << line;
  std::snprintf(line, sizeof line, "mix64(0xdeadbeef) = %016llx\n",
                static_cast<unsigned long long>(kMix64OfDeadBeef));
  std::cout << line;
  std::snprintf(line, sizeof line, "reseed(0,0,1,0)   = %.17g\n", kReseedGolden);
  std::cout << line;
  std::cout << "pattern(hpsn=0, K=11) =";
  for (const auto orbit : kPatternHpsn0K11) std::cout << ' ' << orbit;
  std::cout << "\n";
  std::cout << "keystream(key=0^128, maps=4, orbits=11, 64 bytes) =\n  "
            << mmohocc::to_hex(kZeroKeyKeystream64.data(),
                               kZeroKeyKeystream64.size())
            << "\n";
  return kExitOk;
}

int run_test(const std::string& key_hex, const std::string& input,
             std::uint64_t sequences, std::uint64_t bits, double alpha,
             const std::string& report_prefix, std::uint32_t maps,
             std::uint32_t orbits, unsigned threads,
             const std::string& command_line) {
  mmohocc::BatteryConfig config;
  config.sequence_count = sequences;
  config.bits_per_sequence = bits;
  config.alpha = alpha;
  config.threads = threads;

  mmohocc::RunManifest manifest;
  manifest.command = command_line;
  manifest.version = mmohocc::kVersion;
  manifest.map_count = maps;
  manifest.orbit_count = orbits;

  std::unique_ptr<mmohocc::SequenceSource> source;
  if (!input.empty()) {
    manifest.input_path = input;
    try {
      source = std::make_unique<mmohocc::FileSequenceSource>(input, bits);
    } catch (const std::runtime_error& e) {
      throw IoError(e.what());
    }
  } else {
    manifest.key_hex = key_hex;
    source = std::make_unique<mmohocc::KeystreamSequenceSource>(
        mmohocc::KeystreamGenerator(parse_key(key_hex), maps, orbits), bits);
  }
  if (!report_prefix.empty()) {
    manifest.output_paths = {report_prefix + ".txt", report_prefix + ".json",
                             report_prefix + ".csv"};
  }

  mmohocc::BatteryReport report;
  try {
    report = mmohocc::run_battery(*source, config, manifest);
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }

  mmohocc::write_text_report(report, std::cout);
  if (!report_prefix.empty()) {
    std::ofstream txt(report_prefix + ".txt");
    std::ofstream json(report_prefix + ".json");
    std::ofstream csv(report_prefix + ".csv");
    if (!txt || !json || !csv) throw IoError("cannot open report files: " + report_prefix);
    mmohocc::write_text_report(report, txt);
    mmohocc::write_json_report(report, json);
    mmohocc::write_csv_histograms(report, csv);
    if (!txt || !json || !csv) throw IoError("error writing report files");
  }

  for (const mmohocc::ReportRow& row : report.rows) {
    if (row.judged && row.proportion < report.range_lo) return kExitNonRandom;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mmohocc multi-map orbit-hopping chaotic stream cipher tool"};
  app.set_version_flag("--version", mmohocc::kVersion);
  app.require_subcommand(1);

  auto* keygen = app.add_subcommand("keygen", "Generate a fresh random key (hex)");
  unsigned keygen_bits = 128;
  keygen->add_option("--bits", keygen_bits, "Key size in bits: 128, 256 or 512");

  auto* gen = app.add_subcommand("gen", "Write raw keystream bytes to a file");
  std::string gen_key, gen_out;
  std::uint64_t gen_bytes = 0;
  std::uint32_t gen_maps = mmohocc::kDefaultMapCount;
  std::uint32_t gen_orbits = mmohocc::kDefaultOrbitCount;
  gen->add_option("--key", gen_key, "Master key (hex)")->required();
  gen->add_option("--bytes", gen_bytes, "Byte count")->required();
  gen->add_option("--out", gen_out, "Output path")->required();
  gen->add_option("--maps", gen_maps, "Chaotic map count");
  gen->add_option("--orbits", gen_orbits, "Orbits per map");

  std::string crypt_key, crypt_in, crypt_out;
  std::uint32_t crypt_maps = mmohocc::kDefaultMapCount;
  std::uint32_t crypt_orbits = mmohocc::kDefaultOrbitCount;
  for (const char* name : {"encrypt", "decrypt"}) {
    auto* cmd = app.add_subcommand(
        name, std::string(name) + std::string(" a file (XOR keystream)"));
    cmd->add_option("--key", crypt_key, "Master key (hex)")->required();
    cmd->add_option("--in", crypt_in, "Input path")->required();
    cmd->add_option("--out", crypt_out, "Output path")->required();
    cmd->add_option("--maps", crypt_maps, "Chaotic map count");
    cmd->add_option("--orbits", crypt_orbits, "Orbits per map");
  }

  auto* test = app.add_subcommand("test", "Run the randomness test battery");
  std::string test_key, test_in, test_report;
  std::uint64_t test_sequences = 100;
  std::uint64_t test_bits = 1'000'000;
  double test_alpha = 0.01;
  std::uint32_t test_maps = mmohocc::kDefaultMapCount;
  std::uint32_t test_orbits = mmohocc::kDefaultOrbitCount;
  unsigned test_threads = 0;
  auto* key_opt = test->add_option("--key", test_key, "Generate input from this key (hex)");
  auto* in_opt = test->add_option("--in", test_in, "Read input bits from a raw binary file");
  key_opt->excludes(in_opt);
  test->add_option("--sequences", test_sequences, "Number of bit sequences");
  test->add_option("--bits", test_bits, "Bits per sequence");
  test->add_option("--alpha", test_alpha, "Significance level");
  test->add_option("--report", test_report, "Write PREFIX.txt/.json/.csv reports");
  test->add_option("--maps", test_maps, "Chaotic map count");
  test->add_option("--orbits", test_orbits, "Orbits per map");
  test->add_option("--threads", test_threads, "Worker threads (0 = auto)");

  auto* pattern = app.add_subcommand("pattern", "Print one hopping-pattern table row");
  std::uint32_t pattern_hpsn = 0;
  std::uint32_t pattern_orbits = mmohocc::kDefaultOrbitCount;
  pattern->add_option("--hpsn", pattern_hpsn, "Pattern serial number 0..255")->required();
  pattern->add_option("--orbits", pattern_orbits, "Orbits per map");

  app.add_subcommand("vectors", "Print the pinned known-answer vectors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    std::cout << app.version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::ostringstream command_line;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) command_line << ' ';
    command_line << argv[i];
  }

  try {
    if (app.got_subcommand("keygen")) return run_keygen(keygen_bits);
    if (app.got_subcommand("gen")) {
      return run_gen(gen_key, gen_bytes, gen_out, gen_maps, gen_orbits);
    }
    if (app.got_subcommand("encrypt") || app.got_subcommand("decrypt")) {
      return run_crypt(crypt_key, crypt_in, crypt_out, crypt_maps, crypt_orbits);
    }
    if (app.got_subcommand("test")) {
      if (test_key.empty() && test_in.empty()) {
        throw UsageError("test requires --key or --in");
      }
      return run_test(test_key, test_in, test_sequences, test_bits, test_alpha,
                      test_report, test_maps, test_orbits, test_threads,
                      command_line.str());
    }
    if (app.got_subcommand("pattern")) return run_pattern(pattern_hpsn, pattern_orbits);
    if (app.got_subcommand("vectors")) return run_vectors();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
