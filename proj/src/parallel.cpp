#include "ivts/parallel.hpp"

#include <cstdlib>

#include "ivts/text.hpp"

namespace ivts {

unsigned default_threads() {
    if (const char* env = std::getenv("IVTS_THREADS")) {
        try {
            const auto v = parse_int(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (...) {
            // fall through to hardware concurrency
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

} // namespace ivts
