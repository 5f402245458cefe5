uint32_t counter = read_counter();

params[1].value.a = counter;
