#include <string.h>
#include <tee_internal_api.h>

static uint8_t slots[16];

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    (void)param_types;
    uint32_t idx = params[0].value.a;

    slots[idx] = 1;
    return TEE_SUCCESS;
}
