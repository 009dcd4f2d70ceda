#include <assert.h>
int main() {
    unsigned int x = nondet_uint();
    unsigned int y = nondet_uint();
    __ESBMC_assume(x >= 20 && x <= 30);
    __ESBMC_assume(y <= 30);
    assert(x >= y);
    return 0;
}
