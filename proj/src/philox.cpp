#include "tmn/stochastic.hpp"

namespace tmn {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo)
{
	const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
	hi = static_cast<std::uint32_t>(p >> 32);
	lo = static_cast<std::uint32_t>(p);
}

} // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> x, std::array<std::uint32_t, 2> key)
{
	for (int round = 0; round < 10; ++round) {
		std::uint32_t hi0, lo0, hi1, lo1;
		mulhilo(kMul0, x[0], hi0, lo0);
		mulhilo(kMul1, x[2], hi1, lo1);
		x = {hi1 ^ x[1] ^ key[0], lo1, hi0 ^ x[3] ^ key[1], lo0};
		key[0] += kWeyl0;
		key[1] += kWeyl1;
	}
	return x;
}

double philox_uniform(std::uint64_t seed, std::uint64_t sample, std::uint64_t entry)
{
	const auto out = philox4x32({static_cast<std::uint32_t>(entry), static_cast<std::uint32_t>(entry >> 32),
	                             static_cast<std::uint32_t>(sample), static_cast<std::uint32_t>(sample >> 32)},
	                            {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
	const std::uint64_t bits = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
	return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

} // namespace tmn
