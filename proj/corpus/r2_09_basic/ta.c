#include <string.h>
#include <tee_internal_api.h>

static const uint8_t lut[8] = {1, 2, 3, 4, 5, 6, 7, 8};

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    (void)param_types;
    uint8_t v = lut[params[1].value.b];

    (void)v;
    return TEE_SUCCESS;
}
