switch (params[0].value.a) {
case 1:
    enable_feature();
    break;
default:
    break;
}
