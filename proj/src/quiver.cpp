#include "ncdt/quiver.hpp"
