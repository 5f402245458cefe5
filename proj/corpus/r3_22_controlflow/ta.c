uint32_t sum = 0;
uint32_t i;

for (i = 0; i < 16; i++)
    sum += ((uint8_t *)params[3].memref.buffer)[i];
(void)sum;
