#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "textscope/log.h"

int main(int argc, char** argv) {
  textscope::log::InitFromEnv();
  doctest::Context context(argc, argv);
  return context.run();
}
