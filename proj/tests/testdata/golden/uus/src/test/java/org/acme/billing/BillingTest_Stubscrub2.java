package org.acme.billing;

import static org.junit.Assert.assertEquals;
import static org.mockito.Mockito.mock;
import static org.mockito.Mockito.when;

import org.junit.Before;
import org.junit.Test;

public class BillingTest_Stubscrub2 {
    private static final String ACCOUNT = "ACC-9";

    private Ledger ledger;
    private RateTable rates;
    private Billing billing;

    @Before
    public void setUp() {
        ledger = mock(Ledger.class);
        rates = mock(RateTable.class);
        billing = new Billing(ledger, rates);
    }

    @Test
    public void skipsFrozenAccount() {
        when(ledger.isFrozen(ACCOUNT)).thenReturn(true);
        assertEquals(0, billing.charge(ACCOUNT));
    }
}
