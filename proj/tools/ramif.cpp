// placeholder while the library takes shape; replaced by the real CLI below
int main() { return 0; }
