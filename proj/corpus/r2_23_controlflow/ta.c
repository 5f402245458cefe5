uint32_t hist[16];

for (int j = 0; j < params[3].value.a; j++)
    hist[j] = 0;
