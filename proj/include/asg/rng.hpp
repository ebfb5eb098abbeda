#ifndef ASG_RNG_HPP
#define ASG_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace asg {

// Seeded RNG with explicit distributions. std::mt19937_64 output is fully
// specified by the standard; the uniform/gaussian transforms below avoid
// std::uniform_real_distribution / std::normal_distribution, whose streams
// differ between standard-library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform index in [0, n). Modulo bias is negligible for the n used here.
    std::uint64_t next_index(std::uint64_t n) { return engine_() % n; }

    // Standard normal via Box-Muller; one spare is cached per pair.
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] so the log is finite.
        double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
        double u2 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace asg

#endif // ASG_RNG_HPP
