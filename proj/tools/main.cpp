#include <cstdio>
int main() { std::puts("starkforge: CLI not wired up yet"); return 1; }
