#include <assert.h>
int main() {
    int x = 0;
    while (x < 100 && __VERIFIER_nondet_int()) {
        x = x + 7;
    }
    assert(x <= 98);
    return 0;
}
