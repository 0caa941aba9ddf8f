#include "typed.hpp"

namespace tits {
TITS_INSTANTIATE_RUN(ANFX)
}
