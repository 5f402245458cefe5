uint32_t idx = params[1].value.b;

slots[idx] = 1;
