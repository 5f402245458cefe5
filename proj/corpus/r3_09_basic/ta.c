uint8_t first = ((uint8_t *)params[1].memref.buffer)[1];

(void)first;
