// Command-line front end: stream export, the test battery, sensitivity and
// distribution reports, throughput bench and the watermark pipeline.
//
// Exit codes: 0 success, 1 I/O failure, 2 invalid configuration, 3 battery
// reported at least one failing test.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include <ciprng/ciprng.hpp>

namespace {

struct stream_options {
  std::string x0_hex = "0";
  std::string isaac_key_hex;
  std::uint32_t xorshift_seed = 1;
  bool time_seed = false;
  std::uint32_t n_cells = 32;
  std::uint32_t round_base = 96;
  bool no_emit_initial = false;
  std::string index_mode = "modulo";
  bool unsafe_params = false;
  std::string fixture;
};

void add_stream_options(CLI::App* cmd, stream_options& o, bool with_fixture) {
  cmd->add_option("--x0", o.x0_hex, "initial cell state as a hex word");
  cmd->add_option("--isaac-key", o.isaac_key_hex,
                  "ISAAC key bytes as hex")
      ->envname("CIPRNG_ISAAC_KEY");
  cmd->add_option("--xorshift-seed", o.xorshift_seed, "xorshift key word");
  cmd->add_flag("--time-seed", o.time_seed,
                "draw the whole key from the clock (echoed in metadata)");
  cmd->add_option("-n,--n,--n-cells", o.n_cells, "state width in cells [2,64]");
  cmd->add_option("-c,--c,--round-base", o.round_base,
                  "base per-round flip count (m is this or this+1)");
  cmd->add_flag("--no-emit-initial", o.no_emit_initial,
                "do not emit the initial state as the first word");
  cmd->add_option("--index-mode", o.index_mode, "strategy word reduction")
      ->check(CLI::IsMember({"modulo", "rejection"}));
  cmd->add_flag("--unsafe-params", o.unsafe_params,
                "lift the round-base >= 3n safety floor");
  if (with_fixture)
    cmd->add_option("--inject-fixture", o.fixture,
                    "replace key and sources with a scripted fixture")
        ->check(CLI::IsMember({"table2"}));
}

std::uint64_t parse_hex_word(const std::string& s) {
  std::string t = s;
  if (t.rfind("0x", 0) == 0 || t.rfind("0X", 0) == 0)
    t = t.substr(2);
  if (t.empty() || t.size() > 16)
    throw std::invalid_argument("hex word '" + s + "' is empty or too long");
  std::uint64_t v = 0;
  for (char c : t) {
    unsigned d;
    if (c >= '0' && c <= '9')
      d = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f')
      d = static_cast<unsigned>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F')
      d = static_cast<unsigned>(c - 'A' + 10);
    else
      throw std::invalid_argument("invalid hex digit in '" + s + "'");
    v = (v << 4) | d;
  }
  return v;
}

ciprng::ci_params make_params(const stream_options& o) {
  ciprng::ci_params p;
  p.n_cells = o.n_cells;
  p.round_base = o.round_base;
  p.emit_initial = !o.no_emit_initial;
  p.mode = o.index_mode == "rejection" ? ciprng::index_mode::rejection
                                       : ciprng::index_mode::modulo;
  p.allow_unsafe = o.unsafe_params;
  return p;
}

ciprng::seed_key make_key(const stream_options& o) {
  ciprng::seed_key k;
  if (o.time_seed) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(
        std::chrono::steady_clock::now().time_since_epoch().count()) ^
        (static_cast<std::uint64_t>(std::random_device{}()) << 32));
    k.x0.resize(o.n_cells);
    for (auto& b : k.x0)
      b = static_cast<std::uint8_t>(rng() & 1u);
    k.isaac_key.resize(16);
    for (auto& b : k.isaac_key)
      b = static_cast<std::uint8_t>(rng());
    k.xorshift_seed = static_cast<std::uint32_t>(rng());
    return k;
  }
  const std::uint64_t v = parse_hex_word(o.x0_hex);
  if (o.n_cells < 64 && (v >> o.n_cells) != 0)
    throw std::invalid_argument("--x0 value does not fit in " +
                                std::to_string(o.n_cells) + " cells");
  k.x0 = ciprng::bit_vector(o.n_cells);
  for (std::uint32_t i = 0; i < o.n_cells; ++i)
    k.x0[i] = static_cast<std::uint8_t>((v >> (o.n_cells - 1 - i)) & 1u);
  k.isaac_key = ciprng::parse_hex(o.isaac_key_hex);
  if (o.xorshift_seed == 0)
    throw std::invalid_argument(
        "--xorshift-seed 0 is not a valid key (xorshift fixes the zero state)");
  k.xorshift_seed = o.xorshift_seed;
  return k;
}

std::string x0_hex_of(const ciprng::seed_key& key) {
  std::uint64_t v = 0;
  for (auto b : key.x0)
    v = (v << 1) | (b & 1u);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(v));
  return buf;
}

using metadata = std::vector<std::pair<std::string, std::string>>;

metadata base_metadata(const std::string& command) {
  return {{"tool", std::string(ciprng::tool_name) + " " +
                       std::string(ciprng::tool_version)},
          {"command", command}};
}

void append_key_metadata(metadata& kv, const ciprng::seed_key& key,
                         const ciprng::ci_params& p) {
  for (auto& e : ciprng::describe_stream(key, p))
    kv.push_back(std::move(e));
  kv.emplace_back("x0-hex", x0_hex_of(key));
  kv.emplace_back("isaac-key-hex", ciprng::hex_string(key.isaac_key));
  kv.emplace_back("xorshift-seed", std::to_string(key.xorshift_seed));
}

void write_metadata_file(const std::string& out_path, const metadata& kv) {
  std::ofstream os(out_path + ".meta");
  if (!os)
    throw std::runtime_error("cannot open '" + out_path + ".meta' for writing");
  ciprng::write_key_values(os, kv);
  if (!os.good())
    throw std::runtime_error("failed writing '" + out_path + ".meta'");
}

std::ofstream open_output(const std::string& path, bool binary) {
  std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
  if (!os)
    throw std::runtime_error("cannot open '" + path + "' for writing");
  return os;
}

// A uniform word supply over every selectable source, so generate and test
// share one data path.
struct word_supply {
  unsigned width = 32;
  std::function<std::uint64_t()> next;
};

word_supply make_supply(const std::string& source, const stream_options& o,
                        const ciprng::seed_key& key,
                        const ciprng::ci_params& params) {
  word_supply s;
  if (!o.fixture.empty()) {
    s.width = 5;
    auto g = std::make_shared<ciprng::injected_ci_prng>(
        ciprng::make_reference_fixture());
    s.next = [g] { return g->next_word(); };
  } else if (source == "ci") {
    s.width = params.n_cells;
    auto g = std::make_shared<ciprng::ci_prng>(ciprng::make_ci_prng(key, params));
    s.next = [g] { return g->next_word(); };
  } else if (source == "isaac") {
    auto g = std::make_shared<ciprng::isaac32>(
        ciprng::isaac32::from_key_bytes(key.isaac_key));
    s.next = [g] { return g->next(); };
  } else if (source == "xorshift") {
    auto g = std::make_shared<ciprng::xorshift32>(key.xorshift_seed);
    s.next = [g] { return g->next(); };
  } else if (source == "zeros") {
    s.next = [] { return std::uint64_t{0}; };
  } else if (source == "alternating") {
    s.next = [] { return std::uint64_t{0x55555555u}; };
  } else {
    throw std::invalid_argument("unknown source '" + source + "'");
  }
  return s;
}

ciprng::bit_vector draw_bits(word_supply& s, std::size_t n_bits) {
  ciprng::bit_vector bits;
  bits.reserve(n_bits);
  while (bits.size() < n_bits) {
    const std::uint64_t w = s.next();
    for (unsigned j = 0; j < s.width && bits.size() < n_bits; ++j)
      bits.push_back(static_cast<std::uint8_t>((w >> (s.width - 1 - j)) & 1u));
  }
  return bits;
}

int cmd_generate(const stream_options& o, const std::string& source,
                 const std::string& format, std::size_t n_bits,
                 std::size_t n_words, const std::string& out_path) {
  const bool keyed = o.fixture.empty() &&
                     (source == "ci" || source == "isaac" || source == "xorshift");
  const auto key = keyed ? make_key(o) : ciprng::seed_key{};
  const auto params = make_params(o);
  auto supply = make_supply(source, o, key, params);

  metadata kv = base_metadata("generate");
  if (!o.fixture.empty())
    kv.emplace_back("fixture", o.fixture);
  else if (source == "ci")
    append_key_metadata(kv, key, params);
  else
    kv.emplace_back("source", source);
  kv.emplace_back("format", format);

  if (format == "words") {
    std::vector<std::uint64_t> words(n_words);
    for (auto& w : words)
      w = supply.next();
    auto os = open_output(out_path, false);
    ciprng::write_words(os, words);
    if (!os.good())
      throw std::runtime_error("failed writing '" + out_path + "'");
    kv.emplace_back("words", std::to_string(n_words));
    kv.emplace_back("word-width", std::to_string(supply.width));
  } else {
    if (format == "raw" && n_bits % 8 != 0)
      throw std::invalid_argument("raw format needs --bits divisible by 8");
    const auto bits = draw_bits(supply, n_bits);
    auto os = open_output(out_path, format == "raw");
    if (format == "raw")
      ciprng::write_raw_bits(os, bits);
    else
      ciprng::write_ascii_bits(os, bits);
    if (!os.good())
      throw std::runtime_error("failed writing '" + out_path + "'");
    kv.emplace_back("bits", std::to_string(n_bits));
  }
  write_metadata_file(out_path, kv);
  return 0;
}

int cmd_test(const stream_options& o, const std::string& source,
             std::size_t n_bits, const std::string& out_path) {
  const bool keyed =
      source == "ci" || source == "isaac" || source == "xorshift";
  const auto key = keyed ? make_key(o) : ciprng::seed_key{};
  const auto params = make_params(o);
  auto supply = make_supply(source, o, key, params);

  auto input = ciprng::battery_input_from_bits(draw_bits(supply, n_bits),
                                               supply.width);
  const auto reports = ciprng::run_battery(input);

  ciprng::write_battery_report(std::cout, reports);
  if (!out_path.empty()) {
    auto os = open_output(out_path, false);
    ciprng::write_battery_report(os, reports);
    if (!os.good())
      throw std::runtime_error("failed writing '" + out_path + "'");
    metadata kv = base_metadata("test");
    if (source == "ci")
      append_key_metadata(kv, key, params);
    else
      kv.emplace_back("source", source);
    kv.emplace_back("bits", std::to_string(n_bits));
    write_metadata_file(out_path, kv);
  }
  return ciprng::battery_passed(reports) ? 0 : 3;
}

int cmd_sensitivity(std::size_t pairs, std::size_t bits,
                    std::uint64_t protocol_seed, const stream_options& o,
                    const std::string& out_path) {
  ciprng::sensitivity_config cfg;
  cfg.pairs = pairs;
  cfg.bits_per_stream = bits;
  cfg.protocol_seed = protocol_seed;
  cfg.params = make_params(o);
  const auto results = ciprng::key_sensitivity(cfg);

  auto os = open_output(out_path, false);
  ciprng::write_sensitivity_csv(os, results);
  if (!os.good())
    throw std::runtime_error("failed writing '" + out_path + "'");

  const double mean = ciprng::sensitivity_mean(results);
  std::printf("sensitivity: %zu pairs, %zu bits each, mean ratio %.6f\n",
              pairs, bits, mean);

  metadata kv = base_metadata("sensitivity");
  kv.emplace_back("pairs", std::to_string(pairs));
  kv.emplace_back("bits-per-stream", std::to_string(bits));
  kv.emplace_back("protocol-seed", std::to_string(protocol_seed));
  kv.emplace_back("n-cells", std::to_string(cfg.params.n_cells));
  kv.emplace_back("round-base", std::to_string(cfg.params.round_base));
  kv.emplace_back("mean-ratio", ciprng::detail::fmt_double(mean));
  write_metadata_file(out_path, kv);
  return 0;
}

int cmd_cloud(const stream_options& o, const std::string& source,
              std::size_t n_words, const std::string& out_path) {
  const bool keyed =
      o.fixture.empty() &&
      (source == "ci" || source == "isaac" || source == "xorshift");
  const auto key = keyed ? make_key(o) : ciprng::seed_key{};
  const auto params = make_params(o);
  auto supply = make_supply(source, o, key, params);

  std::vector<std::uint64_t> words(n_words);
  for (auto& w : words)
    w = supply.next();
  const auto pts = ciprng::point_cloud(words, supply.width);

  auto os = open_output(out_path, false);
  ciprng::write_point_cloud_csv(os, pts);
  if (!os.good())
    throw std::runtime_error("failed writing '" + out_path + "'");

  metadata kv = base_metadata("cloud");
  if (keyed && source == "ci")
    append_key_metadata(kv, key, params);
  else
    kv.emplace_back("source", o.fixture.empty() ? source : "fixture");
  kv.emplace_back("words", std::to_string(n_words));
  kv.emplace_back("points", std::to_string(pts.size()));
  write_metadata_file(out_path, kv);
  return 0;
}

int cmd_bench(const stream_options& o, std::size_t n_bytes) {
  const auto key = make_key(o);
  const auto entries = ciprng::throughput_bench(key, make_params(o), n_bytes);
  std::printf("%-22s %12s %10s %14s\n", "generator", "bytes", "seconds",
              "bytes/s");
  for (const auto& e : entries)
    std::printf("%-22s %12zu %10.4f %14.0f\n", e.name.c_str(), e.bytes,
                e.seconds, e.bytes_per_second);
  return 0;
}

int cmd_wm_encrypt(const stream_options& o, const std::string& in_path,
                   const std::string& out_path, std::size_t iterations) {
  const auto key = make_key(o);
  std::ifstream is(in_path, std::ios::binary);
  if (!is)
    throw std::runtime_error("cannot open '" + in_path + "'");
  auto wm = ciprng::read_pbm(is);
  wm.bits = ciprng::encrypt_watermark(key, wm.bits, iterations);
  auto os = open_output(out_path, true);
  ciprng::write_pbm(os, wm);
  if (!os.good())
    throw std::runtime_error("failed writing '" + out_path + "'");

  metadata kv = base_metadata("wm-encrypt");
  kv.emplace_back("iterations", std::to_string(iterations));
  kv.emplace_back("x0-hex", x0_hex_of(key));
  kv.emplace_back("isaac-key-hex", ciprng::hex_string(key.isaac_key));
  kv.emplace_back("xorshift-seed", std::to_string(key.xorshift_seed));
  kv.emplace_back("key-fingerprint", ciprng::key_fingerprint(key));
  write_metadata_file(out_path, kv);
  return 0;
}

int cmd_wm_embed(const stream_options& o, const std::string& carrier_path,
                 const std::string& wm_path, const std::string& out_path,
                 std::size_t iterations) {
  const auto key = make_key(o);
  std::ifstream cs(carrier_path, std::ios::binary);
  if (!cs)
    throw std::runtime_error("cannot open '" + carrier_path + "'");
  const auto carrier = ciprng::read_pgm(cs);
  std::ifstream ws(wm_path, std::ios::binary);
  if (!ws)
    throw std::runtime_error("cannot open '" + wm_path + "'");
  const auto wm = ciprng::read_pbm(ws);

  const auto marked = ciprng::embed_watermark(key, carrier, wm, iterations);
  auto os = open_output(out_path, true);
  ciprng::write_pgm(os, marked);
  if (!os.good())
    throw std::runtime_error("failed writing '" + out_path + "'");
  std::printf("embedded %zux%zu watermark, psnr %.2f dB\n", wm.width,
              wm.height, ciprng::psnr(carrier, marked));

  metadata kv = base_metadata("wm-embed");
  kv.emplace_back("iterations", std::to_string(iterations));
  kv.emplace_back("watermark-width", std::to_string(wm.width));
  kv.emplace_back("watermark-height", std::to_string(wm.height));
  kv.emplace_back("x0-hex", x0_hex_of(key));
  kv.emplace_back("isaac-key-hex", ciprng::hex_string(key.isaac_key));
  kv.emplace_back("xorshift-seed", std::to_string(key.xorshift_seed));
  kv.emplace_back("key-fingerprint", ciprng::key_fingerprint(key));
  write_metadata_file(out_path, kv);
  return 0;
}

int cmd_wm_extract(const stream_options& o, const std::string& in_path,
                   const std::string& out_path, std::size_t w, std::size_t h,
                   std::size_t iterations) {
  const auto key = make_key(o);
  std::ifstream is(in_path, std::ios::binary);
  if (!is)
    throw std::runtime_error("cannot open '" + in_path + "'");
  const auto marked = ciprng::read_pgm(is);
  const auto wm = ciprng::extract_watermark(key, marked, w, h, iterations);
  auto os = open_output(out_path, true);
  ciprng::write_pbm(os, wm);
  if (!os.good())
    throw std::runtime_error("failed writing '" + out_path + "'");
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"chaotic-iterations PRNG toolkit"};
  app.require_subcommand(1);
  int rc = 0;

  // generate
  auto* gen = app.add_subcommand("generate", "export a stream to a file");
  stream_options gen_opts;
  std::string gen_source = "ci", gen_format = "raw", gen_out;
  std::size_t gen_bits = 8192, gen_words = 256;
  add_stream_options(gen, gen_opts, true);
  gen->add_option("--source", gen_source, "ci|isaac|xorshift|zeros|alternating")
      ->check(CLI::IsMember({"ci", "isaac", "xorshift", "zeros", "alternating"}));
  gen->add_option("--format", gen_format, "raw|ascii|words")
      ->check(CLI::IsMember({"raw", "ascii", "words"}));
  gen->add_option("--bits", gen_bits, "bit count for raw/ascii formats");
  gen->add_option("--words", gen_words, "word count for the words format");
  gen->add_option("--out", gen_out, "output file")->required();
  gen->callback([&] {
    rc = cmd_generate(gen_opts, gen_source, gen_format, gen_bits, gen_words,
                      gen_out);
  });

  // test
  auto* tst = app.add_subcommand("test", "run the built-in battery");
  stream_options tst_opts;
  std::string tst_source = "ci", tst_out;
  std::size_t tst_bits = 10000000;
  add_stream_options(tst, tst_opts, false);
  tst->add_option("--source", tst_source, "ci|isaac|xorshift|zeros|alternating")
      ->check(CLI::IsMember({"ci", "isaac", "xorshift", "zeros", "alternating"}));
  tst->add_option("--bits", tst_bits, "stream length in bits");
  tst->add_option("--out", tst_out, "also write the report to a file");
  tst->callback([&] { rc = cmd_test(tst_opts, tst_source, tst_bits, tst_out); });

  // sensitivity
  auto* sen = app.add_subcommand("sensitivity",
                                 "key sensitivity experiment (fresh keys, "
                                 "one x0 bit flipped per pair)");
  stream_options sen_opts;
  std::size_t sen_pairs = 100, sen_bits = 100000;
  std::uint64_t sen_seed = 1;
  std::string sen_out;
  sen->add_option("--pairs", sen_pairs, "number of key pairs");
  sen->add_option("--bits", sen_bits, "bits per stream");
  sen->add_option("--protocol-seed", sen_seed, "seed for the pair generator");
  sen->add_option("-n,--n-cells", sen_opts.n_cells, "state width in cells");
  sen->add_option("-c,--round-base", sen_opts.round_base, "base flip count");
  sen->add_flag("--unsafe-params", sen_opts.unsafe_params,
                "lift the round-base safety floor");
  sen->add_option("--out", sen_out, "CSV output file")->required();
  sen->callback(
      [&] { rc = cmd_sensitivity(sen_pairs, sen_bits, sen_seed, sen_opts, sen_out); });

  // cloud
  auto* cld = app.add_subcommand("cloud", "export word triples as unit-cube CSV");
  stream_options cld_opts;
  std::string cld_source = "ci", cld_out;
  std::size_t cld_words = 3000;
  add_stream_options(cld, cld_opts, true);
  cld->add_option("--source", cld_source, "ci|isaac|xorshift|zeros|alternating")
      ->check(CLI::IsMember({"ci", "isaac", "xorshift", "zeros", "alternating"}));
  cld->add_option("--words", cld_words, "words to draw (3 per point)");
  cld->add_option("--out", cld_out, "CSV output file")->required();
  cld->callback([&] { rc = cmd_cloud(cld_opts, cld_source, cld_words, cld_out); });

  // bench
  auto* ben = app.add_subcommand("bench", "throughput comparison");
  stream_options ben_opts;
  std::size_t ben_bytes = 16u << 20;
  add_stream_options(ben, ben_opts, false);
  ben->add_option("--bytes", ben_bytes, "output volume per generator");
  ben->callback([&] { rc = cmd_bench(ben_opts, ben_bytes); });

  // watermark family
  auto* wme = app.add_subcommand("wm-encrypt", "encrypt/decrypt a PBM watermark");
  stream_options wme_opts;
  std::string wme_in, wme_out;
  std::size_t wme_iter = ciprng::default_wm_iterations;
  add_stream_options(wme, wme_opts, false);
  wme->add_option("--in", wme_in, "watermark PBM")->required();
  wme->add_option("--out", wme_out, "output PBM")->required();
  wme->add_option("--iterations", wme_iter, "chaotic iterations");
  wme->callback([&] { rc = cmd_wm_encrypt(wme_opts, wme_in, wme_out, wme_iter); });

  auto* wmb = app.add_subcommand("wm-embed", "embed a watermark into a PGM carrier");
  stream_options wmb_opts;
  std::string wmb_carrier, wmb_wm, wmb_out;
  std::size_t wmb_iter = ciprng::default_wm_iterations;
  add_stream_options(wmb, wmb_opts, false);
  wmb->add_option("--carrier", wmb_carrier, "carrier PGM")->required();
  wmb->add_option("--watermark", wmb_wm, "watermark PBM")->required();
  wmb->add_option("--out", wmb_out, "marked PGM")->required();
  wmb->add_option("--iterations", wmb_iter, "chaotic iterations");
  wmb->callback(
      [&] { rc = cmd_wm_embed(wmb_opts, wmb_carrier, wmb_wm, wmb_out, wmb_iter); });

  auto* wmx = app.add_subcommand("wm-extract", "blind-extract a watermark");
  stream_options wmx_opts;
  std::string wmx_in, wmx_out;
  std::size_t wmx_w = 64, wmx_h = 64;
  std::size_t wmx_iter = ciprng::default_wm_iterations;
  add_stream_options(wmx, wmx_opts, false);
  wmx->add_option("--in", wmx_in, "marked PGM")->required();
  wmx->add_option("--out", wmx_out, "recovered watermark PBM")->required();
  wmx->add_option("--width", wmx_w, "watermark width")->required();
  wmx->add_option("--height", wmx_h, "watermark height")->required();
  wmx->add_option("--iterations", wmx_iter, "chaotic iterations");
  wmx->callback(
      [&] { rc = cmd_wm_extract(wmx_opts, wmx_in, wmx_out, wmx_w, wmx_h, wmx_iter); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return rc;
}
