#include "sklab/hyperboloid.hpp"
