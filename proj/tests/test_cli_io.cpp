#include <doctest.h>
// CLI and serialization tests land with the CLI.
