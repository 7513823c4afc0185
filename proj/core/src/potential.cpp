#include "photoion/common.hpp"
