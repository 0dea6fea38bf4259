// Minimal library tour: key a generator, look at a few output words, then
// run the statistical battery on a short stream.
#include <cstdio>
#include <ciprng/ciprng.hpp>

int main() {
  ciprng::seed_key key;
  key.x0 = ciprng::word_to_bits(0x5EEDF00Du, 32);
  key.isaac_key = {'d', 'e', 'm', 'o'};
  key.xorshift_seed = 42;

  ciprng::ci_params params; // 32 cells, 96/97 negations per round
  for (const auto& [k, v] : ciprng::describe_stream(key, params))
    std::printf("%-16s %s\n", k.c_str(), v.c_str());

  auto gen = ciprng::make_ci_prng(key, params);
  std::printf("\nfirst words:");
  for (int i = 0; i < 8; ++i)
    std::printf(" %08llx", static_cast<unsigned long long>(gen.next_word()));
  std::printf("\n\n");

  const auto input =
      ciprng::battery_input_from_bits(gen.next_bits(1'000'000), 32);
  for (const auto& r : ciprng::run_battery(input))
    std::printf("%s\n", ciprng::format_report_line(r).c_str());
  return 0;
}
